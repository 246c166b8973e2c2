//! Morphism terms: DAG expressions denoting morphisms of a presented
//! globular theory. A term is a base-theory morphism, a lift generator, a
//! composite, a tuple into a globular product, or a postcomposition with a
//! globe source/target map.

use crate::theta0::{TableOfDimensions, Theta0Morphism};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Index of a lift generator within its presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LiftId(pub u32);

impl fmt::Display for LiftId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MorphTerm {
    Base(Theta0Morphism),
    Gen(LiftId),
    /// `Comp(outer, inner)` is `outer ∘ inner`: `inner` applies first.
    Comp(Box<MorphTerm>, Box<MorphTerm>),
    /// Components indexed by the peaks of the target table.
    Tuple(Vec<MorphTerm>, TableOfDimensions),
    SrcPost(Box<MorphTerm>),
    TgtPost(Box<MorphTerm>),
}

impl MorphTerm {
    pub fn base(m: Theta0Morphism) -> Self {
        MorphTerm::Base(m)
    }

    pub fn gen(id: LiftId) -> Self {
        MorphTerm::Gen(id)
    }

    pub fn comp(outer: MorphTerm, inner: MorphTerm) -> Self {
        MorphTerm::Comp(Box::new(outer), Box::new(inner))
    }

    pub fn tuple(components: Vec<MorphTerm>, target: TableOfDimensions) -> Self {
        MorphTerm::Tuple(components, target)
    }

    pub fn src_post(t: MorphTerm) -> Self {
        MorphTerm::SrcPost(Box::new(t))
    }

    pub fn tgt_post(t: MorphTerm) -> Self {
        MorphTerm::TgtPost(Box::new(t))
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            MorphTerm::Base(_) | MorphTerm::Gen(_) => 1,
            MorphTerm::Comp(a, b) => 1 + a.size() + b.size(),
            MorphTerm::Tuple(cs, _) => 1 + cs.iter().map(|c| c.size()).sum::<usize>(),
            MorphTerm::SrcPost(t) | MorphTerm::TgtPost(t) => 1 + t.size(),
        }
    }

    /// Operational depth used by enumeration budgets: base morphisms count 1,
    /// each generator application and tuple layer adds 1.
    pub fn depth(&self) -> usize {
        match self {
            MorphTerm::Base(_) | MorphTerm::Gen(_) => 1,
            MorphTerm::Comp(a, b) => match a.as_ref() {
                // a generator applied to an argument: one layer over the argument
                MorphTerm::Gen(_) => 1 + b.depth(),
                _ => a.depth().max(b.depth()),
            },
            MorphTerm::Tuple(cs, _) => 1 + cs.iter().map(|c| c.depth()).max().unwrap_or(0),
            MorphTerm::SrcPost(t) | MorphTerm::TgtPost(t) => t.depth(),
        }
    }

    pub fn generators(&self) -> Vec<LiftId> {
        let mut out = Vec::new();
        self.visit(&mut |t| {
            if let MorphTerm::Gen(id) = t {
                out.push(*id);
            }
        });
        out.sort();
        out.dedup();
        out
    }

    pub fn visit(&self, f: &mut impl FnMut(&MorphTerm)) {
        f(self);
        match self {
            MorphTerm::Base(_) | MorphTerm::Gen(_) => {}
            MorphTerm::Comp(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            MorphTerm::Tuple(cs, _) => {
                for c in cs {
                    c.visit(f);
                }
            }
            MorphTerm::SrcPost(t) | MorphTerm::TgtPost(t) => t.visit(f),
        }
    }

    /// Replaces the first subterm equal to `from` (found in a preorder walk)
    /// by `to`; `None` if no subterm matches.
    pub fn replace_first(&self, from: &MorphTerm, to: &MorphTerm) -> Option<MorphTerm> {
        if self == from {
            return Some(to.clone());
        }
        match self {
            MorphTerm::Base(_) | MorphTerm::Gen(_) => None,
            MorphTerm::Comp(a, b) => {
                if let Some(a2) = a.replace_first(from, to) {
                    Some(MorphTerm::comp(a2, (**b).clone()))
                } else {
                    b.replace_first(from, to)
                        .map(|b2| MorphTerm::comp((**a).clone(), b2))
                }
            }
            MorphTerm::Tuple(cs, n) => {
                for (i, c) in cs.iter().enumerate() {
                    if let Some(c2) = c.replace_first(from, to) {
                        let mut cs2 = cs.clone();
                        cs2[i] = c2;
                        return Some(MorphTerm::Tuple(cs2, n.clone()));
                    }
                }
                None
            }
            MorphTerm::SrcPost(t) => t.replace_first(from, to).map(MorphTerm::src_post),
            MorphTerm::TgtPost(t) => t.replace_first(from, to).map(MorphTerm::tgt_post),
        }
    }
}

/// Total order used for rewrite orientation and canonical pair enumeration:
/// smaller size first, then structural order. Replacing a subterm by a
/// strictly smaller one strictly shrinks the whole term in this order.
pub fn term_cmp(a: &MorphTerm, b: &MorphTerm) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| a.cmp(b))
}

impl fmt::Display for MorphTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphTerm::Base(m) => write!(f, "{m}"),
            MorphTerm::Gen(id) => write!(f, "gen({id})"),
            MorphTerm::Comp(a, b) => write!(f, "comp({a}, {b})"),
            MorphTerm::Tuple(cs, n) => {
                write!(f, "tuple({n}; ")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            MorphTerm::SrcPost(t) => write!(f, "s({t})"),
            MorphTerm::TgtPost(t) => write!(f, "t({t})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta0::{hom_set, TableOfDimensions};

    #[test]
    fn order_is_size_first() {
        let g1 = TableOfDimensions::globe(1);
        let g0 = TableOfDimensions::globe(0);
        let e = MorphTerm::base(hom_set(&g1, &g0)[0].clone());
        let big = MorphTerm::comp(e.clone(), MorphTerm::base(crate::theta0::identity(&g1)));
        assert_eq!(term_cmp(&e, &big), Ordering::Less);
    }

    #[test]
    fn replace_first_hits_leftmost() {
        let g1 = TableOfDimensions::globe(1);
        let id = MorphTerm::base(crate::theta0::identity(&g1));
        let e = MorphTerm::comp(id.clone(), id.clone());
        let marker = MorphTerm::gen(LiftId(7));
        let replaced = e.replace_first(&id, &marker).unwrap();
        assert_eq!(replaced, MorphTerm::comp(marker, id));
    }
}
