//! Term normalization and the three-valued equality decision procedure.
//!
//! The rewrite system, oriented left-to-smaller:
//! * source/target postcomposition onto a generator spine applies the
//!   generator's triangle (`s∘δ_{f,g} → f`, `t∘δ_{f,g} → g`);
//! * base-onto-tuple composites β-reduce through the canonical bijection
//!   between globe-valued base morphisms and cells;
//! * composition chains flatten, units drop, adjacent base factors collapse
//!   through concrete composition;
//! * tuples of base morphisms evaluate to a single base morphism, one-peak
//!   tuples unwrap, and tuples absorb composition on the right;
//! * declared identifications rewrite the larger side to the smaller
//!   (size-lexicographic order), so each application strictly shrinks the
//!   term.
//!
//! `Equal`/`Distinct` verdicts are sound for the presented theory and stay
//! valid under any larger budget; `Unknown` is the honest fallback.

use crate::finmodel;
use crate::term::MorphTerm;
use crate::theory::{is_identity_term, TheoryError, TheoryPresentation};
use crate::theta0::{self, Face, TableOfDimensions, Theta0Morphism};
use crate::Budget;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EqVerdict {
    Equal,
    Distinct(String),
    Unknown(String),
}

/// Rewrites to normal form. Pre: `t` is well-typed in `th`.
pub fn normalize(th: &TheoryPresentation, t: &MorphTerm) -> Result<MorphTerm, TheoryError> {
    let mut cur = structural_nf(th, t)?;
    if th.idents().is_empty() {
        return Ok(cur);
    }
    let mut seen: BTreeSet<MorphTerm> = BTreeSet::new();
    // identification rewrites strictly shrink the term order, but the
    // interleaved structural pass can regrow it; fuel keeps this total
    let mut fuel = 256usize;
    'outer: while fuel > 0 {
        fuel -= 1;
        if !seen.insert(cur.clone()) {
            break;
        }
        for ident in th.idents() {
            if let Some(next) = cur.replace_first(&ident.drop, &ident.keep) {
                cur = structural_nf(th, &next)?;
                continue 'outer;
            }
        }
        break;
    }
    Ok(cur)
}

fn structural_nf(th: &TheoryPresentation, t: &MorphTerm) -> Result<MorphTerm, TheoryError> {
    match t {
        MorphTerm::Base(_) | MorphTerm::Gen(_) => Ok(t.clone()),
        MorphTerm::SrcPost(u) => {
            let nu = structural_nf(th, u)?;
            post_face(th, Face::Src, nu)
        }
        MorphTerm::TgtPost(u) => {
            let nu = structural_nf(th, u)?;
            post_face(th, Face::Tgt, nu)
        }
        MorphTerm::Comp(o, i) => {
            let no = structural_nf(th, o)?;
            let ni = structural_nf(th, i)?;
            compose_nf(th, no, ni)
        }
        MorphTerm::Tuple(cs, n) => {
            let ncs: Result<Vec<MorphTerm>, TheoryError> =
                cs.iter().map(|c| structural_nf(th, c)).collect();
            tuple_nf(th, ncs?, n.clone())
        }
    }
}

fn post_face(
    th: &TheoryPresentation,
    face: Face,
    nu: MorphTerm,
) -> Result<MorphTerm, TheoryError> {
    let cod = th.cod_of(&nu)?;
    let k = cod.as_globe().ok_or_else(|| {
        TheoryError::IllTyped(format!("face postcomposition onto codomain {cod}"))
    })?;
    if k == 0 {
        return Err(TheoryError::IllTyped(
            "no face below dimension 0".to_string(),
        ));
    }
    let face_m = theta0::globe_face(k, k - 1, face);
    compose_nf(th, MorphTerm::base(face_m), nu)
}

/// Composite of two normal forms, renormalized.
fn compose_nf(
    th: &TheoryPresentation,
    outer: MorphTerm,
    inner: MorphTerm,
) -> Result<MorphTerm, TheoryError> {
    match outer {
        MorphTerm::Comp(h, rest) => {
            let inner2 = compose_nf(th, *rest, inner)?;
            compose_nf(th, *h, inner2)
        }
        factor => compose_factor(th, factor, inner),
    }
}

fn split_head(t: MorphTerm) -> (MorphTerm, Option<MorphTerm>) {
    match t {
        MorphTerm::Comp(h, rest) => (*h, Some(*rest)),
        other => (other, None),
    }
}

fn recompose(
    th: &TheoryPresentation,
    head: MorphTerm,
    rest: Option<MorphTerm>,
) -> Result<MorphTerm, TheoryError> {
    match rest {
        None => Ok(head),
        Some(r) => compose_nf(th, head, r),
    }
}

/// `factor ∘ inner` with `factor` a single (non-`Comp`) normal factor.
fn compose_factor(
    th: &TheoryPresentation,
    factor: MorphTerm,
    inner: MorphTerm,
) -> Result<MorphTerm, TheoryError> {
    if is_identity_term(&factor) {
        return Ok(inner);
    }
    if is_identity_term(&inner) {
        return Ok(factor);
    }
    match factor {
        MorphTerm::Gen(_) => Ok(MorphTerm::comp(factor, inner)),
        MorphTerm::Tuple(cs, n) => {
            let pushed: Result<Vec<MorphTerm>, TheoryError> = cs
                .into_iter()
                .map(|c| compose_nf(th, c, inner.clone()))
                .collect();
            tuple_nf(th, pushed?, n)
        }
        MorphTerm::Base(a) => compose_base(th, a, inner),
        MorphTerm::SrcPost(_) | MorphTerm::TgtPost(_) | MorphTerm::Comp(..) => {
            unreachable!("face posts and chains are eliminated before this point")
        }
    }
}

fn compose_base(
    th: &TheoryPresentation,
    a: Theta0Morphism,
    inner: MorphTerm,
) -> Result<MorphTerm, TheoryError> {
    let (head, rest) = split_head(inner);
    // adjacent base factors collapse concretely
    if let MorphTerm::Base(b) = &head {
        let ab = theta0::compose(&a, b)
            .map_err(|e| TheoryError::IllTyped(e.to_string()))?;
        let collapsed = MorphTerm::base(ab);
        return match rest {
            None => Ok(collapsed),
            Some(r) => compose_nf(th, collapsed, r),
        };
    }
    // a base morphism into a genuine table splits into its peak components
    if a.cod.len() >= 3 {
        let peaks_n = a.cod.peaks().len();
        let mut comps = Vec::with_capacity(peaks_n);
        let whole = recompose(th, head, rest)?;
        for q in 0..peaks_n {
            let proj = theta0::peak_projection(&a.cod, q);
            let aq = theta0::compose(&proj, &a)
                .map_err(|e| TheoryError::IllTyped(e.to_string()))?;
            comps.push(compose_nf(th, MorphTerm::base(aq), whole.clone())?);
        }
        return tuple_nf(th, comps, a.cod.clone());
    }
    match head {
        MorphTerm::Gen(id) => {
            // a : (h+1) → (k) is a pure source or target word; peel the
            // first-applied letter onto the generator's triangle
            let g = th
                .lift(id)
                .ok_or(TheoryError::UnknownGenerator(id))?
                .clone();
            let h1 = g.height + 1;
            let k = a
                .cod
                .as_globe()
                .expect("table codomain handled above");
            debug_assert!(k < h1, "non-identity globe endomorphisms do not exist");
            let class = a.map.cells[k][0];
            let (word_rest, triangle) = if class == 0 {
                (theta0::globe_face(g.height, k, Face::Src), g.fst.clone())
            } else {
                (theta0::globe_face(g.height, k, Face::Tgt), g.snd.clone())
            };
            let body = recompose(th, triangle, rest)?;
            compose_nf(th, MorphTerm::base(word_rest), body)
        }
        MorphTerm::Tuple(cs, n) => {
            debug_assert!(rest.is_none(), "tuples are terminal factors");
            let k = a.cod.as_globe().expect("table codomain handled above");
            let r = theta0::realize(&n);
            let ord = a.map.cells[k][0];
            let (comp, (d, o)) = r.rep(k, ord);
            let peak = n.peaks()[comp];
            let component = cs[comp].clone();
            if d == peak {
                Ok(component)
            } else {
                let face = if o == 0 { Face::Src } else { Face::Tgt };
                let word = theta0::globe_face(peak, d, face);
                compose_nf(th, MorphTerm::base(word), component)
            }
        }
        other => {
            debug_assert!(false, "unexpected head {other}");
            Ok(MorphTerm::comp(MorphTerm::base(a), other))
        }
    }
}

/// Normalizes a tuple whose components are already normal.
fn tuple_nf(
    th: &TheoryPresentation,
    mut cs: Vec<MorphTerm>,
    n: TableOfDimensions,
) -> Result<MorphTerm, TheoryError> {
    if n.len() == 1 {
        return Ok(cs.pop().expect("one component per peak"));
    }
    if cs.iter().all(|c| matches!(c, MorphTerm::Base(_))) {
        let ms: Vec<&Theta0Morphism> = cs
            .iter()
            .map(|c| match c {
                MorphTerm::Base(m) => m,
                _ => unreachable!(),
            })
            .collect();
        return Ok(MorphTerm::base(evaluate_base_tuple(th, &ms, &n)));
    }
    Ok(MorphTerm::Tuple(cs, n))
}

/// Glues base components into the concrete morphism they determine.
fn evaluate_base_tuple(
    _th: &TheoryPresentation,
    ms: &[&Theta0Morphism],
    n: &TableOfDimensions,
) -> Theta0Morphism {
    let r = theta0::realize(n);
    let dom = ms[0].dom.clone();
    let mut cells: Vec<Vec<usize>> = Vec::with_capacity(r.glob.top_dim() + 1);
    for dim in 0..=r.glob.top_dim() {
        let mut col = Vec::with_capacity(r.glob.count(dim));
        for ord in 0..r.glob.count(dim) {
            let (comp, (d, o)) = r.rep(dim, ord);
            col.push(ms[comp].map.cells[d][o]);
        }
        cells.push(col);
    }
    let out = Theta0Morphism {
        dom: dom.clone(),
        cod: n.clone(),
        map: crate::globset::GlobMap { cells },
    };
    debug_assert!(
        out.map
            .commutes(&theta0::realize(n).glob, &theta0::realize(&dom).glob),
        "incompatible tuple components"
    );
    out
}

/// Sound three-valued equality of parallel terms.
///
/// `Equal` means the normal forms coincide (a theory equality). `Distinct`
/// means either a separating finite model was found, or the normal forms are
/// syntactically distinct in a fragment where free extensions are
/// conservative (both base, both bare generators, or one of each) and no
/// identification can reach the codomain height. `Unknown` otherwise; both
/// definite verdicts are final under larger budgets.
pub fn decide_equal(
    th: &TheoryPresentation,
    a: &MorphTerm,
    b: &MorphTerm,
    budget: &Budget,
) -> Result<EqVerdict, TheoryError> {
    let (da, ca) = th.type_of(a)?;
    let (db, cb) = th.type_of(b)?;
    if da != db || ca != cb {
        return Err(TheoryError::IllTyped(format!(
            "terms are not parallel-typed: {da} -> {ca} vs {db} -> {cb}"
        )));
    }
    let na = normalize(th, a)?;
    let nb = normalize(th, b)?;
    if na == nb {
        return Ok(EqVerdict::Equal);
    }
    let touched = !th.idents().is_empty()
        && match th.top_height() {
            Some(n) => ca.height() >= n,
            None => true,
        };
    if !touched {
        match (&na, &nb) {
            (MorphTerm::Base(_), MorphTerm::Base(_)) => {
                return Ok(EqVerdict::Distinct(format!(
                    "distinct base morphisms: {na} vs {nb}"
                )))
            }
            (MorphTerm::Gen(i), MorphTerm::Gen(j)) if i != j => {
                return Ok(EqVerdict::Distinct(format!(
                    "distinct generators gen({i}) vs gen({j})"
                )))
            }
            (MorphTerm::Gen(_), MorphTerm::Base(_)) | (MorphTerm::Base(_), MorphTerm::Gen(_)) => {
                return Ok(EqVerdict::Distinct(format!(
                    "generator against base morphism: {na} vs {nb}"
                )))
            }
            _ => {}
        }
    }
    if budget.max_model_elems > 0 && budget.max_model_nodes > 0 {
        if let Some(witness) = finmodel::search_separating(th, &na, &nb, budget)? {
            return Ok(EqVerdict::Distinct(witness));
        }
    }
    Ok(EqVerdict::Unknown(
        "normal forms differ; no separating model within budget".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{base_theory, AdmissiblePair};

    fn t(v: &[usize]) -> TableOfDimensions {
        TableOfDimensions::new(v.to_vec()).unwrap()
    }

    fn comp_theory() -> (crate::theory::TheoryPresentation, MorphTerm) {
        let th = base_theory();
        let budget = Budget::default().with_table_len(3).with_max_entry(1);
        let chain = t(&[1, 0, 1]);
        let r = theta0::realize(&chain);
        let f = MorphTerm::base(theta0::morphism_from_cell(&chain, 0, r.cell_of(1, (0, 0))));
        let g = MorphTerm::base(theta0::morphism_from_cell(&chain, 0, r.cell_of(0, (0, 1))));
        let pair = AdmissiblePair {
            dom: chain,
            height: 0,
            fst: f,
            snd: g,
        };
        let th2 = th.add_lift(&pair, &budget).unwrap();
        let gen = MorphTerm::gen(th2.lifts()[0].id);
        (th2, gen)
    }

    #[test]
    fn unit_laws_normalize_away() {
        let th = base_theory();
        let g1 = t(&[1]);
        let id = MorphTerm::base(theta0::identity(&g1));
        let f = MorphTerm::base(theta0::globe_face(1, 0, Face::Src));
        let fid = MorphTerm::comp(f.clone(), id.clone());
        let idf = MorphTerm::comp(MorphTerm::base(theta0::identity(&t(&[0]))), f.clone());
        assert_eq!(normalize(&th, &fid).unwrap(), normalize(&th, &f).unwrap());
        assert_eq!(normalize(&th, &idf).unwrap(), normalize(&th, &f).unwrap());
    }

    #[test]
    fn triangles_fire_under_faces() {
        let (th, c) = comp_theory();
        let g = th.lifts()[0].clone();
        let s = normalize(&th, &MorphTerm::src_post(c.clone())).unwrap();
        let t_ = normalize(&th, &MorphTerm::tgt_post(c)).unwrap();
        assert_eq!(s, g.fst);
        assert_eq!(t_, g.snd);
    }

    #[test]
    fn iterated_words_peel() {
        // a two-step source word over a generator also reduces
        let th = base_theory();
        let budget = Budget::default().with_table_len(1).with_max_entry(2);
        // reflexive pair at height 1 over (2): id_(2) faces
        let id2 = MorphTerm::base(theta0::identity(&t(&[2])));
        let s_id = MorphTerm::src_post(id2.clone());
        let pair = AdmissiblePair {
            dom: t(&[2]),
            height: 1,
            fst: normalize(&th, &s_id).unwrap(),
            snd: normalize(&th, &s_id).unwrap(),
        };
        let th2 = th.add_lift(&pair, &budget).unwrap();
        let delta = MorphTerm::gen(th2.lifts()[0].id);
        // s∘s∘δ = s∘(s∘δ) = s∘fst
        let two = MorphTerm::src_post(MorphTerm::src_post(delta));
        let expect = normalize(&th2, &MorphTerm::src_post(pair.fst.clone())).unwrap();
        assert_eq!(normalize(&th2, &two).unwrap(), expect);
    }

    #[test]
    fn base_tuples_evaluate() {
        let th = base_theory();
        let chain = t(&[1, 0, 1]);
        let proj0 = MorphTerm::base(theta0::peak_projection(&chain, 0));
        let proj1 = MorphTerm::base(theta0::peak_projection(&chain, 1));
        let tup = MorphTerm::tuple(vec![proj0, proj1], chain.clone());
        let n = normalize(&th, &tup).unwrap();
        match n {
            MorphTerm::Base(m) => assert!(m.is_identity()),
            other => panic!("expected base normal form, got {other}"),
        }
    }

    #[test]
    fn projection_beta_reduces() {
        let (th, c) = comp_theory();
        let chain = t(&[1, 0, 1]);
        // target of the composite equals the chain's global target
        let tgt_of_c = normalize(&th, &MorphTerm::tgt_post(c)).unwrap();
        let r = theta0::realize(&chain);
        let expected =
            MorphTerm::base(theta0::morphism_from_cell(&chain, 0, r.cell_of(0, (0, 1))));
        assert_eq!(tgt_of_c, normalize(&th, &expected).unwrap());
    }

    #[test]
    fn decide_equal_on_base_endpoints() {
        let th = base_theory();
        let g1 = t(&[1]);
        let g0 = t(&[0]);
        let homs = theta0::hom_set(&g1, &g0);
        let a = MorphTerm::base(homs[0].clone());
        let b = MorphTerm::base(homs[1].clone());
        let budget = Budget::default();
        assert!(matches!(
            decide_equal(&th, &a, &b, &budget).unwrap(),
            EqVerdict::Distinct(_)
        ));
        assert_eq!(
            decide_equal(&th, &a, &a, &budget).unwrap(),
            EqVerdict::Equal
        );
    }

    #[test]
    fn non_parallel_terms_are_ill_typed() {
        let th = base_theory();
        let g1 = t(&[1]);
        let a = MorphTerm::base(theta0::identity(&g1));
        let b = MorphTerm::base(theta0::globe_face(1, 0, Face::Src));
        assert!(decide_equal(&th, &a, &b, &Budget::default()).is_err());
    }
}
