//! Finitely presented globular theories over the base theory: stratified
//! lift generators, admissible pairs, free lift-extension, the top-dimension
//! quotient, and a sound (three-valued) equality decision procedure.

use crate::term::{term_cmp, LiftId, MorphTerm};
use crate::theta0::{self, TableOfDimensions};
use crate::Budget;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

pub use crate::rewrite::{decide_equal, normalize, EqVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("ill-typed term: {0}")]
    IllTyped(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(LiftId),
    #[error("pair is not admissible: {0}")]
    NotAdmissible(String),
    #[error("budget excludes every candidate term: {0}")]
    BudgetTooSmall(String),
}

/// A freely added lift `δ_{f,g} : p⃗ → (k+1)` for an admissible pair
/// `f, g : p⃗ → (k)`, together with its triangle relations
/// `s ∘ δ = f` and `t ∘ δ = g` (installed as rewrite rules).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftGenerator {
    pub id: LiftId,
    pub name: String,
    pub dom: TableOfDimensions,
    /// The pair lands in `(height)`; the lift in `(height + 1)`.
    pub height: usize,
    /// Normalized first component (the source triangle).
    pub fst: MorphTerm,
    /// Normalized second component (the target triangle).
    pub snd: MorphTerm,
    /// Index into the presentation's stage list.
    pub stage: usize,
}

/// A declared equality between two parallel terms at the quotient height,
/// oriented so that `drop` rewrites to the smaller `keep`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub keep: MorphTerm,
    pub drop: MorphTerm,
    pub dom: TableOfDimensions,
    pub height: usize,
}

/// Generation-stage metadata: which tower step added which lifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageInfo {
    pub label: String,
    /// Height of the admissible pairs this stage lifted; `None` for the base.
    pub height: Option<usize>,
    pub first_lift: usize,
    pub n_lifts: usize,
}

/// An admissible pair: parallel terms `f, g : p⃗ → (k)` with
/// `hgt(p⃗) ≤ k+1`, in canonical order (`fst ≤ snd`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePair {
    pub dom: TableOfDimensions,
    pub height: usize,
    pub fst: MorphTerm,
    pub snd: MorphTerm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryPresentation {
    lifts: Vec<LiftGenerator>,
    idents: Vec<Identification>,
    /// Quotient height, if a quotient stage has been installed.
    top_height: Option<usize>,
    /// Table-height restriction on objects (truncation stages).
    max_table_height: Option<usize>,
    stages: Vec<StageInfo>,
    /// Budget the presentation was generated under (recorded, not enforced).
    pub budget: Budget,
}

/// The base theory: no lifts, no identifications, all tables.
pub fn base_theory() -> TheoryPresentation {
    TheoryPresentation {
        lifts: Vec::new(),
        idents: Vec::new(),
        top_height: None,
        max_table_height: None,
        stages: vec![StageInfo {
            label: "base".to_string(),
            height: None,
            first_lift: 0,
            n_lifts: 0,
        }],
        budget: Budget::default(),
    }
}

/// The base theory restricted to tables of height ≤ `n`.
pub fn restricted_base(n: usize) -> TheoryPresentation {
    let mut t = base_theory();
    t.max_table_height = Some(n);
    t.stages[0].label = format!("base<={n}");
    t
}

impl TheoryPresentation {
    pub fn lift(&self, id: LiftId) -> Option<&LiftGenerator> {
        self.lifts.get(id.0 as usize)
    }

    pub fn lifts(&self) -> &[LiftGenerator] {
        &self.lifts
    }

    pub fn idents(&self) -> &[Identification] {
        &self.idents
    }

    pub fn top_height(&self) -> Option<usize> {
        self.top_height
    }

    pub fn max_table_height(&self) -> Option<usize> {
        self.max_table_height
    }

    pub fn stages(&self) -> &[StageInfo] {
        &self.stages
    }

    pub fn stage_lifts(&self, stage: usize) -> &[LiftGenerator] {
        let s = &self.stages[stage];
        &self.lifts[s.first_lift..s.first_lift + s.n_lifts]
    }

    pub fn last_stage(&self) -> usize {
        self.stages.len() - 1
    }

    /// Earliest lift whose (dom, height, pair) matches.
    pub fn find_lift(
        &self,
        dom: &TableOfDimensions,
        height: usize,
        fst: &MorphTerm,
        snd: &MorphTerm,
    ) -> Option<LiftId> {
        self.lifts
            .iter()
            .find(|g| g.height == height && &g.dom == dom && &g.fst == fst && &g.snd == snd)
            .map(|g| g.id)
    }

    /// Same, restricted to one stage.
    pub fn find_lift_in_stage(
        &self,
        stage: usize,
        dom: &TableOfDimensions,
        height: usize,
        fst: &MorphTerm,
        snd: &MorphTerm,
    ) -> Option<LiftId> {
        self.stage_lifts(stage)
            .iter()
            .find(|g| g.height == height && &g.dom == dom && &g.fst == fst && &g.snd == snd)
            .map(|g| g.id)
    }

    /// Is `t` a valid object of this theory?
    pub fn admits_table(&self, t: &TableOfDimensions) -> bool {
        match self.max_table_height {
            Some(h) => t.height() <= h,
            None => true,
        }
    }

    /// Validating type check; returns `(dom, cod)`.
    pub fn type_of(
        &self,
        t: &MorphTerm,
    ) -> Result<(TableOfDimensions, TableOfDimensions), TheoryError> {
        match t {
            MorphTerm::Base(m) => {
                if !self.admits_table(&m.dom) || !self.admits_table(&m.cod) {
                    return Err(TheoryError::IllTyped(format!(
                        "table outside the theory's height restriction: {} -> {}",
                        m.dom, m.cod
                    )));
                }
                Ok((m.dom.clone(), m.cod.clone()))
            }
            MorphTerm::Gen(id) => {
                let g = self.lift(*id).ok_or(TheoryError::UnknownGenerator(*id))?;
                Ok((g.dom.clone(), TableOfDimensions::globe(g.height + 1)))
            }
            MorphTerm::Comp(o, i) => {
                let (di, ci) = self.type_of(i)?;
                let (doo, co) = self.type_of(o)?;
                if ci != doo {
                    return Err(TheoryError::IllTyped(format!(
                        "composition mismatch: inner cod {ci} vs outer dom {doo}"
                    )));
                }
                Ok((di, co))
            }
            MorphTerm::SrcPost(u) | MorphTerm::TgtPost(u) => {
                let (d, c) = self.type_of(u)?;
                let k = c.as_globe().ok_or_else(|| {
                    TheoryError::IllTyped(format!(
                        "face postcomposition needs a globe codomain, got {c}"
                    ))
                })?;
                if k == 0 {
                    return Err(TheoryError::IllTyped(
                        "no face below dimension 0".to_string(),
                    ));
                }
                Ok((d, TableOfDimensions::globe(k - 1)))
            }
            MorphTerm::Tuple(cs, n) => {
                if !self.admits_table(n) {
                    return Err(TheoryError::IllTyped(format!(
                        "tuple target {n} outside the theory's height restriction"
                    )));
                }
                let peaks = n.peaks();
                if cs.len() != peaks.len() {
                    return Err(TheoryError::IllTyped(format!(
                        "tuple into {n} needs {} components, got {}",
                        peaks.len(),
                        cs.len()
                    )));
                }
                let mut dom: Option<TableOfDimensions> = None;
                for (c, &p) in cs.iter().zip(&peaks) {
                    let (d, co) = self.type_of(c)?;
                    if co != TableOfDimensions::globe(p) {
                        return Err(TheoryError::IllTyped(format!(
                            "tuple component should land in ({p}), got {co}"
                        )));
                    }
                    match &dom {
                        None => dom = Some(d),
                        Some(d0) if *d0 != d => {
                            return Err(TheoryError::IllTyped(
                                "tuple components must share a domain".to_string(),
                            ))
                        }
                        _ => {}
                    }
                }
                // shared-face compatibility: the source face of each left
                // component agrees with the target face of its right neighbour
                let valleys = n.valleys();
                for (j, &v) in valleys.iter().enumerate() {
                    let lf = iterate_face(cs[j].clone(), peaks[j], v, true);
                    let rf = iterate_face(cs[j + 1].clone(), peaks[j + 1], v, false);
                    let nl = normalize(self, &lf)?;
                    let nr = normalize(self, &rf)?;
                    if nl != nr {
                        return Err(TheoryError::IllTyped(format!(
                            "tuple faces disagree at valley {v}: {nl} vs {nr}"
                        )));
                    }
                }
                Ok((dom.expect("tables have at least one peak"), n.clone()))
            }
        }
    }

    /// Non-validating codomain computation (used inside the rewriter).
    pub(crate) fn cod_of(&self, t: &MorphTerm) -> Result<TableOfDimensions, TheoryError> {
        match t {
            MorphTerm::Base(m) => Ok(m.cod.clone()),
            MorphTerm::Gen(id) => {
                let g = self.lift(*id).ok_or(TheoryError::UnknownGenerator(*id))?;
                Ok(TableOfDimensions::globe(g.height + 1))
            }
            MorphTerm::Comp(o, _) => self.cod_of(o),
            MorphTerm::SrcPost(u) | MorphTerm::TgtPost(u) => {
                let c = self.cod_of(u)?;
                let k = c.as_globe().ok_or_else(|| {
                    TheoryError::IllTyped("face of a non-globe codomain".to_string())
                })?;
                if k == 0 {
                    return Err(TheoryError::IllTyped(
                        "no face below dimension 0".to_string(),
                    ));
                }
                Ok(TableOfDimensions::globe(k - 1))
            }
            MorphTerm::Tuple(_, n) => Ok(n.clone()),
        }
    }

    pub(crate) fn dom_of(&self, t: &MorphTerm) -> Result<TableOfDimensions, TheoryError> {
        match t {
            MorphTerm::Base(m) => Ok(m.dom.clone()),
            MorphTerm::Gen(id) => {
                let g = self.lift(*id).ok_or(TheoryError::UnknownGenerator(*id))?;
                Ok(g.dom.clone())
            }
            MorphTerm::Comp(_, i) => self.dom_of(i),
            MorphTerm::SrcPost(u) | MorphTerm::TgtPost(u) => self.dom_of(u),
            MorphTerm::Tuple(cs, _) => self.dom_of(&cs[0]),
        }
    }

    /// Checks admissibility of a candidate pair: typing, the height bound
    /// `hgt(p⃗) ≤ k+1`, and parallelism under `decide_equal` for `k ≥ 1`.
    pub fn check_admissible(
        &self,
        pair: &AdmissiblePair,
        budget: &Budget,
    ) -> Result<(), TheoryError> {
        let globe = TableOfDimensions::globe(pair.height);
        for part in [&pair.fst, &pair.snd] {
            let (d, c) = self.type_of(part)?;
            if d != pair.dom || c != globe {
                return Err(TheoryError::NotAdmissible(format!(
                    "component {part} is typed {d} -> {c}, expected {} -> {globe}",
                    pair.dom
                )));
            }
        }
        if pair.dom.height() > pair.height + 1 {
            return Err(TheoryError::NotAdmissible(format!(
                "hgt({}) = {} exceeds {}",
                pair.dom,
                pair.dom.height(),
                pair.height + 1
            )));
        }
        if pair.height >= 1 {
            for (mk, label) in [
                (MorphTerm::src_post as fn(MorphTerm) -> MorphTerm, "source"),
                (MorphTerm::tgt_post as fn(MorphTerm) -> MorphTerm, "target"),
            ] {
                let a = mk(pair.fst.clone());
                let b = mk(pair.snd.clone());
                match decide_equal(self, &a, &b, budget)? {
                    EqVerdict::Equal => {}
                    v => {
                        return Err(TheoryError::NotAdmissible(format!(
                            "{label} composites not provably equal ({v:?})"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    /// Extends by a single fresh lift for an admissible pair.
    pub fn add_lift(
        &self,
        pair: &AdmissiblePair,
        budget: &Budget,
    ) -> Result<TheoryPresentation, TheoryError> {
        self.check_admissible(pair, budget)?;
        let mut out = self.clone();
        out.stages.push(StageInfo {
            label: format!("lift@{}", pair.height),
            height: Some(pair.height),
            first_lift: out.lifts.len(),
            n_lifts: 0,
        });
        out.push_lift(pair)?;
        Ok(out)
    }

    fn push_lift(&mut self, pair: &AdmissiblePair) -> Result<(), TheoryError> {
        let id = LiftId(self.lifts.len() as u32);
        let fst = normalize(self, &pair.fst)?;
        let snd = normalize(self, &pair.snd)?;
        let stage = self.stages.len() - 1;
        self.lifts.push(LiftGenerator {
            id,
            name: format!("d{}_{}", pair.height, id.0),
            dom: pair.dom.clone(),
            height: pair.height,
            fst,
            snd,
            stage,
        });
        self.stages[stage].n_lifts += 1;
        Ok(())
    }

    /// One tower step: freely adds a lift for every enumerated admissible
    /// pair at `height`. The new lifts form a fresh stage labelled `label`.
    pub fn extend_at_height(
        &self,
        height: usize,
        budget: &Budget,
        label: &str,
    ) -> Result<TheoryPresentation, TheoryError> {
        let pairs = self.enumerate_admissible_pairs(height, budget)?;
        let mut out = self.clone();
        out.stages.push(StageInfo {
            label: label.to_string(),
            height: Some(height),
            first_lift: out.lifts.len(),
            n_lifts: 0,
        });
        for p in &pairs {
            out.push_lift(p)?;
        }
        Ok(out)
    }

    /// All admissible pairs at height `k` within budget: canonical order
    /// (domain table, then the pair), `fst ≤ snd`, reflexive pairs included,
    /// only one orientation per unordered pair.
    pub fn enumerate_admissible_pairs(
        &self,
        k: usize,
        budget: &Budget,
    ) -> Result<Vec<AdmissiblePair>, TheoryError> {
        if budget.max_term_depth == 0 {
            return Err(TheoryError::BudgetTooSmall(
                "term depth 0 excludes base terms".to_string(),
            ));
        }
        let height_cap = match self.max_table_height {
            Some(h) => (k + 1).min(h),
            None => k + 1,
        };
        let tables = theta0::enumerate_tables(budget, Some(height_cap));
        if tables.is_empty() {
            return Err(TheoryError::BudgetTooSmall(
                "no tables within budget".to_string(),
            ));
        }
        let globe = TableOfDimensions::globe(k);
        let mut memo = HashMap::new();
        let mut out = Vec::new();
        for dom in tables {
            let universe =
                self.terms_into(&dom, &globe, budget.max_term_depth, budget, &mut memo)?;
            for i in 0..universe.len() {
                for j in i..universe.len() {
                    let (f, g) = (&universe[i], &universe[j]);
                    if k >= 1 {
                        let sf = MorphTerm::src_post(f.clone());
                        let sg = MorphTerm::src_post(g.clone());
                        if decide_equal(self, &sf, &sg, budget)? != EqVerdict::Equal {
                            continue;
                        }
                        let tf = MorphTerm::tgt_post(f.clone());
                        let tg = MorphTerm::tgt_post(g.clone());
                        if decide_equal(self, &tf, &tg, budget)? != EqVerdict::Equal {
                            continue;
                        }
                    }
                    out.push(AdmissiblePair {
                        dom: dom.clone(),
                        height: k,
                        fst: f.clone(),
                        snd: g.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    /// All distinct normalized terms `dom → cod` of depth ≤ `depth`, sorted
    /// by the canonical term order.
    pub fn terms_into(
        &self,
        dom: &TableOfDimensions,
        cod: &TableOfDimensions,
        depth: usize,
        budget: &Budget,
        memo: &mut HashMap<(TableOfDimensions, TableOfDimensions, usize), Vec<MorphTerm>>,
    ) -> Result<Vec<MorphTerm>, TheoryError> {
        let key = (dom.clone(), cod.clone(), depth);
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        // seed the memo to cut recursion through identical keys
        memo.insert(key.clone(), Vec::new());
        let mut out: Vec<MorphTerm> = Vec::new();
        if depth == 0 {
            return Ok(out);
        }
        if self.admits_table(dom) && self.admits_table(cod) {
            for m in theta0::hom_set(dom, cod).iter() {
                out.push(MorphTerm::base(m.clone()));
            }
        }
        for g in &self.lifts {
            if TableOfDimensions::globe(g.height + 1) != *cod {
                continue;
            }
            if &g.dom == dom {
                out.push(MorphTerm::gen(g.id));
            }
            if depth >= 2 {
                for u in self.terms_into(dom, &g.dom, depth - 1, budget, memo)? {
                    if is_identity_term(&u) {
                        continue;
                    }
                    out.push(normalize(self, &MorphTerm::comp(MorphTerm::gen(g.id), u))?);
                }
            }
        }
        if cod.len() >= 3 && depth >= 2 {
            let peaks = cod.peaks();
            let valleys = cod.valleys();
            let mut comps: Vec<Vec<MorphTerm>> = Vec::with_capacity(peaks.len());
            for &p in &peaks {
                comps.push(self.terms_into(
                    dom,
                    &TableOfDimensions::globe(p),
                    depth - 1,
                    budget,
                    memo,
                )?);
            }
            if comps.iter().all(|c| !c.is_empty()) {
                let mut choice = vec![0usize; peaks.len()];
                'odometer: loop {
                    let cs: Vec<MorphTerm> = choice
                        .iter()
                        .zip(&comps)
                        .map(|(&i, c)| c[i].clone())
                        .collect();
                    let mut ok = true;
                    for (j, &v) in valleys.iter().enumerate() {
                        let lf =
                            normalize(self, &iterate_face(cs[j].clone(), peaks[j], v, true))?;
                        let rf = normalize(
                            self,
                            &iterate_face(cs[j + 1].clone(), peaks[j + 1], v, false),
                        )?;
                        if lf != rf {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        out.push(normalize(self, &MorphTerm::tuple(cs, cod.clone()))?);
                    }
                    for j in 0..choice.len() {
                        choice[j] += 1;
                        if choice[j] < comps[j].len() {
                            continue 'odometer;
                        }
                        choice[j] = 0;
                    }
                    break;
                }
            }
        }
        out.sort_by(term_cmp);
        out.dedup();
        memo.insert(key, out.clone());
        Ok(out)
    }

    /// Installs identifications for every enumerated admissible pair at
    /// height `n`, oriented toward the enumeration-first element. The result
    /// records the budget; the quotient is partial if the budget was.
    pub fn quotient_parallel_at_height(
        &self,
        n: usize,
        budget: &Budget,
    ) -> Result<TheoryPresentation, TheoryError> {
        let mut out = self.clone();
        out.top_height = Some(n);
        out.budget = *budget;
        out.stages.push(StageInfo {
            label: format!("quotient@{n}"),
            height: Some(n),
            first_lift: out.lifts.len(),
            n_lifts: 0,
        });
        let pairs = match self.enumerate_admissible_pairs(n, budget) {
            Ok(p) => p,
            Err(TheoryError::BudgetTooSmall(_)) => Vec::new(),
            Err(e) => return Err(e),
        };
        for p in pairs {
            if p.fst == p.snd {
                continue;
            }
            // later identifications may already be subsumed by earlier ones
            let keep = normalize(&out, &p.fst)?;
            let drop = normalize(&out, &p.snd)?;
            if keep == drop {
                continue;
            }
            let (keep, drop) = match term_cmp(&keep, &drop) {
                std::cmp::Ordering::Greater => (drop, keep),
                _ => (keep, drop),
            };
            out.idents.push(Identification {
                keep,
                drop,
                dom: p.dom.clone(),
                height: n,
            });
        }
        Ok(out)
    }
}

/// Iterated face of a term landing in `(peak)`, down to dimension `v`.
/// `src` picks the source face, otherwise the target face.
pub fn iterate_face(t: MorphTerm, peak: usize, v: usize, src: bool) -> MorphTerm {
    let mut out = t;
    for _ in v..peak {
        out = if src {
            MorphTerm::src_post(out)
        } else {
            MorphTerm::tgt_post(out)
        };
    }
    out
}

pub fn is_identity_term(t: &MorphTerm) -> bool {
    matches!(t, MorphTerm::Base(m) if m.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta0::hom_set;

    fn t(v: &[usize]) -> TableOfDimensions {
        TableOfDimensions::new(v.to_vec()).unwrap()
    }

    #[test]
    fn base_theory_is_empty() {
        let th = base_theory();
        assert!(th.lifts().is_empty());
        assert!(th.idents().is_empty());
    }

    #[test]
    fn base_hom_terms_match_theta0() {
        let th = base_theory();
        let mut memo = HashMap::new();
        let terms = th
            .terms_into(&t(&[1]), &t(&[0]), 3, &Budget::default(), &mut memo)
            .unwrap();
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|u| matches!(u, MorphTerm::Base(_))));
    }

    #[test]
    fn composition_candidate_is_enumerated() {
        let th = base_theory();
        let budget = Budget::default().with_table_len(3).with_max_entry(1);
        let pairs = th.enumerate_admissible_pairs(0, &budget).unwrap();
        let chain = t(&[1, 0, 1]);
        let found = pairs.iter().any(|p| {
            p.dom == chain
                && matches!((&p.fst, &p.snd), (MorphTerm::Base(a), MorphTerm::Base(b)) if a != b)
        });
        assert!(found, "no candidate pair over (1,0,1): {pairs:?}");
    }

    #[test]
    fn reflexive_pair_is_admissible_at_height_one() {
        let th = base_theory();
        let budget = Budget::default().with_table_len(1).with_max_entry(1);
        let pairs = th.enumerate_admissible_pairs(1, &budget).unwrap();
        let id1 = MorphTerm::base(theta0::identity(&t(&[1])));
        assert!(pairs
            .iter()
            .any(|p| p.dom == t(&[1]) && p.fst == id1 && p.snd == id1));
    }

    #[test]
    fn non_parallel_pairs_are_excluded() {
        let th = base_theory();
        let budget = Budget::default().with_table_len(3).with_max_entry(2);
        let pairs = th.enumerate_admissible_pairs(1, &budget).unwrap();
        for p in &pairs {
            let sf = MorphTerm::src_post(p.fst.clone());
            let sg = MorphTerm::src_post(p.snd.clone());
            assert_eq!(
                decide_equal(&th, &sf, &sg, &budget).unwrap(),
                EqVerdict::Equal
            );
        }
    }

    #[test]
    fn add_lift_installs_triangles() {
        let th = base_theory();
        let budget = Budget::default().with_table_len(3).with_max_entry(1);
        let chain = t(&[1, 0, 1]);
        let homs = hom_set(&chain, &t(&[0]));
        assert_eq!(homs.len(), 3);
        let r = theta0::realize(&chain);
        // the chain's global source is the source end of the right component,
        // its global target the target end of the left component
        let src_cell = r.cell_of(1, (0, 0));
        let tgt_cell = r.cell_of(0, (0, 1));
        let f = MorphTerm::base(theta0::morphism_from_cell(&chain, 0, src_cell));
        let g = MorphTerm::base(theta0::morphism_from_cell(&chain, 0, tgt_cell));
        let pair = AdmissiblePair {
            dom: chain.clone(),
            height: 0,
            fst: f.clone(),
            snd: g.clone(),
        };
        let th2 = th.add_lift(&pair, &budget).unwrap();
        let delta = MorphTerm::gen(th2.lifts()[0].id);
        let s = normalize(&th2, &MorphTerm::src_post(delta.clone())).unwrap();
        let t_ = normalize(&th2, &MorphTerm::tgt_post(delta)).unwrap();
        assert_eq!(s, normalize(&th2, &f).unwrap());
        assert_eq!(t_, normalize(&th2, &g).unwrap());
    }

    #[test]
    fn non_admissible_is_rejected() {
        let th = base_theory();
        let budget = Budget::default();
        // mismatched codomains: one component lands in (0), the other in (2)
        let bad = AdmissiblePair {
            dom: t(&[2]),
            height: 0,
            fst: MorphTerm::base(theta0::globe_face(2, 0, theta0::Face::Src)),
            snd: MorphTerm::base(theta0::identity(&t(&[2]))),
        };
        assert!(th.add_lift(&bad, &budget).is_err());
    }
}
