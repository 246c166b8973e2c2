//! Finite models of a presented theory: carriers per dimension, one
//! operation table per lift generator, exact validation of triangle and
//! identification axioms, and a budgeted exhaustive search for a model
//! separating two terms.

use crate::term::{LiftId, MorphTerm};
use crate::theory::{TheoryError, TheoryPresentation};
use crate::theta0::{self, TableOfDimensions};
use crate::Budget;
use std::collections::BTreeMap;

/// A finite model of a `TheoryPresentation`, truncated at `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryModel {
    pub level: usize,
    /// Carrier sizes for dimensions `0..=level`.
    pub carriers: Vec<usize>,
    /// `src[d][c]` is the source of the `(d+1)`-cell `c`.
    pub src: Vec<Vec<usize>>,
    pub tgt: Vec<Vec<usize>>,
    /// One total table per lift, indexed by the canonical enumeration of the
    /// lift's domain elements.
    pub ops: BTreeMap<LiftId, Vec<usize>>,
}

impl TheoryModel {
    fn iter_src(&self, dim: usize, cell: usize, down_to: usize) -> usize {
        let mut c = cell;
        for d in (down_to + 1..=dim).rev() {
            c = self.src[d - 1][c];
        }
        c
    }

    fn iter_tgt(&self, dim: usize, cell: usize, down_to: usize) -> usize {
        let mut c = cell;
        for d in (down_to + 1..=dim).rev() {
            c = self.tgt[d - 1][c];
        }
        c
    }

    /// Elements of `X(t)`: peak-cell tuples whose shared faces agree, in
    /// lexicographic order.
    pub fn table_elements(&self, t: &TableOfDimensions) -> Vec<Vec<usize>> {
        let peaks = t.peaks();
        let valleys = t.valleys();
        if peaks.iter().any(|&p| p > self.level) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut choice: Vec<usize> = Vec::new();
        self.elements_rec(&peaks, &valleys, &mut choice, &mut out);
        out
    }

    fn elements_rec(
        &self,
        peaks: &[usize],
        valleys: &[usize],
        choice: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let j = choice.len();
        if j == peaks.len() {
            out.push(choice.clone());
            return;
        }
        for c in 0..self.carriers[peaks[j]] {
            if j > 0 {
                let v = valleys[j - 1];
                // source face of the left component = target face of this one
                let left = self.iter_src(peaks[j - 1], choice[j - 1], v);
                let right = self.iter_tgt(peaks[j], c, v);
                if left != right {
                    continue;
                }
            }
            choice.push(c);
            self.elements_rec(peaks, valleys, choice, out);
            choice.pop();
        }
    }

    pub fn elem_index(&self, t: &TableOfDimensions, e: &[usize]) -> Option<usize> {
        self.table_elements(t).iter().position(|x| x == e)
    }

    /// Value of the pasting `e : X(t)` at the cell `(comp, (d, o))` of the
    /// realization.
    fn pasting_value(
        &self,
        t: &TableOfDimensions,
        e: &[usize],
        comp: usize,
        d: usize,
        o: usize,
    ) -> usize {
        let peak = t.peaks()[comp];
        if d == peak {
            e[comp]
        } else if o == 0 {
            self.iter_src(peak, e[comp], d)
        } else {
            self.iter_tgt(peak, e[comp], d)
        }
    }

    /// Evaluates a term `u : p⃗ → q⃗` at an element of `X(p⃗)`, producing an
    /// element of `X(q⃗)` (peak tuple).
    pub fn eval(
        &self,
        th: &TheoryPresentation,
        u: &MorphTerm,
        e: &[usize],
    ) -> Result<Vec<usize>, TheoryError> {
        match u {
            MorphTerm::Base(m) => {
                let r_cod = theta0::realize(&m.cod);
                let r_dom = theta0::realize(&m.dom);
                let peaks = m.cod.peaks();
                let mut out = Vec::with_capacity(peaks.len());
                for (j, &p) in peaks.iter().enumerate() {
                    let top_ord = r_cod.cell_of(j, (p, 0));
                    let img = m.map.cells[p][top_ord];
                    let (comp, (d, o)) = r_dom.rep(p, img);
                    out.push(self.pasting_value(&m.dom, e, comp, d, o));
                }
                Ok(out)
            }
            MorphTerm::Gen(id) => {
                let g = th.lift(*id).ok_or(TheoryError::UnknownGenerator(*id))?;
                let idx = self
                    .elem_index(&g.dom, e)
                    .ok_or_else(|| TheoryError::IllTyped("element outside carrier".into()))?;
                let table = self.ops.get(id).ok_or_else(|| {
                    TheoryError::IllTyped(format!("model lacks a table for {id}"))
                })?;
                Ok(vec![table[idx]])
            }
            MorphTerm::Comp(o, i) => {
                let mid = self.eval(th, i, e)?;
                self.eval(th, o, &mid)
            }
            MorphTerm::Tuple(cs, _) => {
                let mut out = Vec::with_capacity(cs.len());
                for c in cs {
                    let v = self.eval(th, c, e)?;
                    out.push(v[0]);
                }
                Ok(out)
            }
            MorphTerm::SrcPost(inner) => {
                let v = self.eval(th, inner, e)?;
                let k = th
                    .cod_of(inner)?
                    .as_globe()
                    .ok_or_else(|| TheoryError::IllTyped("face of non-globe".into()))?;
                Ok(vec![self.src[k - 1][v[0]]])
            }
            MorphTerm::TgtPost(inner) => {
                let v = self.eval(th, inner, e)?;
                let k = th
                    .cod_of(inner)?
                    .as_globe()
                    .ok_or_else(|| TheoryError::IllTyped("face of non-globe".into()))?;
                Ok(vec![self.tgt[k - 1][v[0]]])
            }
        }
    }

    /// Exact validation: globular identities, every triangle, every
    /// identification.
    pub fn validates(&self, th: &TheoryPresentation) -> Result<bool, TheoryError> {
        for d in 1..self.level {
            for c in 0..self.carriers[d + 1] {
                let s = self.src[d][c];
                let t = self.tgt[d][c];
                if self.src[d - 1][s] != self.src[d - 1][t]
                    || self.tgt[d - 1][s] != self.tgt[d - 1][t]
                {
                    return Ok(false);
                }
            }
        }
        for g in th.lifts() {
            if g.height + 1 > self.level {
                return Ok(false);
            }
            let table = match self.ops.get(&g.id) {
                Some(t) => t,
                None => return Ok(false),
            };
            let elems = self.table_elements(&g.dom);
            if table.len() != elems.len() {
                return Ok(false);
            }
            for (idx, e) in elems.iter().enumerate() {
                let v = table[idx];
                let want_src = self.eval(th, &g.fst, e)?[0];
                let want_tgt = self.eval(th, &g.snd, e)?[0];
                if self.src[g.height][v] != want_src || self.tgt[g.height][v] != want_tgt {
                    return Ok(false);
                }
            }
        }
        for ident in th.idents() {
            for e in self.table_elements(&ident.dom) {
                if self.eval(th, &ident.keep, &e)? != self.eval(th, &ident.drop, &e)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Level needed to interpret the whole presentation plus the given terms.
fn required_level(th: &TheoryPresentation, terms: &[&MorphTerm]) -> Result<usize, TheoryError> {
    let mut level = 0;
    for g in th.lifts() {
        level = level.max(g.height + 1);
    }
    for t in terms {
        level = level.max(th.dom_of(t)?.height());
        level = level.max(th.cod_of(t)?.height());
    }
    Ok(level)
}

/// Enumerates valid models of `th` at `level` with carriers of size
/// `1..=max_elems`, visiting at most `node_cap` candidates. Deterministic.
pub fn enumerate_valid_models(
    th: &TheoryPresentation,
    level: usize,
    max_elems: usize,
    node_cap: usize,
) -> Result<Vec<TheoryModel>, TheoryError> {
    let mut out = Vec::new();
    let mut nodes = 0usize;
    let mut sizes = vec![1usize; level + 1];
    'profiles: loop {
        build_models(th, level, &sizes, &mut nodes, node_cap, &mut |m| {
            out.push(m.clone())
        })?;
        if nodes >= node_cap {
            break;
        }
        for d in 0..=level {
            sizes[d] += 1;
            if sizes[d] <= max_elems {
                continue 'profiles;
            }
            sizes[d] = 1;
        }
        break;
    }
    Ok(out)
}

/// Searches for a valid model in which the two (parallel, normalized) terms
/// evaluate differently. Sound: every reported model is exactly validated.
pub fn search_separating(
    th: &TheoryPresentation,
    a: &MorphTerm,
    b: &MorphTerm,
    budget: &Budget,
) -> Result<Option<String>, TheoryError> {
    let level = required_level(th, &[a, b])?;
    if level > 2 {
        // search space too large to be useful; callers degrade to Unknown
        return Ok(None);
    }
    let dom = th.dom_of(a)?;
    let mut found: Option<String> = None;
    let mut nodes = 0usize;
    let cap = budget.max_model_nodes;
    let mut sizes = vec![1usize; level + 1];
    'profiles: loop {
        if found.is_some() || nodes >= cap {
            break;
        }
        build_models(th, level, &sizes, &mut nodes, cap, &mut |m| {
            if found.is_some() {
                return;
            }
            for e in m.table_elements(&dom) {
                let va = m.eval(th, a, &e);
                let vb = m.eval(th, b, &e);
                if let (Ok(va), Ok(vb)) = (va, vb) {
                    if va != vb {
                        found = Some(format!(
                            "model with carriers {:?} separates at element {:?}: {:?} vs {:?}",
                            m.carriers, e, va, vb
                        ));
                        return;
                    }
                }
            }
        })?;
        for d in 0..=level {
            sizes[d] += 1;
            if sizes[d] <= budget.max_model_elems {
                continue 'profiles;
            }
            sizes[d] = 1;
        }
        break;
    }
    Ok(found)
}

/// Enumerates all valid models with the given carrier sizes, calling `sink`
/// on each; stops once `nodes` reaches `cap`.
fn build_models(
    th: &TheoryPresentation,
    level: usize,
    sizes: &[usize],
    nodes: &mut usize,
    cap: usize,
    sink: &mut impl FnMut(&TheoryModel),
) -> Result<(), TheoryError> {
    // boundary structures
    let mut skeleton = TheoryModel {
        level,
        carriers: sizes.to_vec(),
        src: (1..=level).map(|d| vec![0usize; sizes[d]]).collect(),
        tgt: (1..=level).map(|d| vec![0usize; sizes[d]]).collect(),
        ops: BTreeMap::new(),
    };
    fill_boundaries(th, &mut skeleton, 0, 0, true, nodes, cap, sink)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn fill_boundaries(
    th: &TheoryPresentation,
    m: &mut TheoryModel,
    dim: usize,
    cell: usize,
    filling_src: bool,
    nodes: &mut usize,
    cap: usize,
    sink: &mut impl FnMut(&TheoryModel),
) -> Result<(), TheoryError> {
    if *nodes >= cap {
        return Ok(());
    }
    if dim == m.level {
        return fill_ops(th, m, 0, nodes, cap, sink);
    }
    let n_cells = m.carriers[dim + 1];
    if cell == n_cells {
        if filling_src {
            return fill_boundaries(th, m, dim, 0, false, nodes, cap, sink);
        }
        // globular identities against the dimension below
        if dim >= 1 {
            for c in 0..n_cells {
                let s = m.src[dim][c];
                let t = m.tgt[dim][c];
                if m.src[dim - 1][s] != m.src[dim - 1][t]
                    || m.tgt[dim - 1][s] != m.tgt[dim - 1][t]
                {
                    return Ok(());
                }
            }
        }
        return fill_boundaries(th, m, dim + 1, 0, true, nodes, cap, sink);
    }
    for v in 0..m.carriers[dim] {
        *nodes += 1;
        if *nodes >= cap {
            return Ok(());
        }
        if filling_src {
            m.src[dim][cell] = v;
        } else {
            m.tgt[dim][cell] = v;
        }
        fill_boundaries(th, m, dim, cell + 1, filling_src, nodes, cap, sink)?;
    }
    Ok(())
}

fn fill_ops(
    th: &TheoryPresentation,
    m: &mut TheoryModel,
    lift_idx: usize,
    nodes: &mut usize,
    cap: usize,
    sink: &mut impl FnMut(&TheoryModel),
) -> Result<(), TheoryError> {
    if *nodes >= cap {
        return Ok(());
    }
    if lift_idx == th.lifts().len() {
        // identifications are the last gate
        for ident in th.idents() {
            for e in m.table_elements(&ident.dom) {
                let l = m.eval(th, &ident.keep, &e);
                let r = m.eval(th, &ident.drop, &e);
                match (l, r) {
                    (Ok(l), Ok(r)) if l == r => {}
                    _ => return Ok(()),
                }
            }
        }
        sink(m);
        return Ok(());
    }
    let g = &th.lifts()[lift_idx];
    if g.height + 1 > m.level {
        return Ok(());
    }
    let elems = m.table_elements(&g.dom);
    // boundary-constrained candidates per element
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(elems.len());
    for e in &elems {
        let want_src = m.eval(th, &g.fst, e)?[0];
        let want_tgt = m.eval(th, &g.snd, e)?[0];
        let opts: Vec<usize> = (0..m.carriers[g.height + 1])
            .filter(|&v| m.src[g.height][v] == want_src && m.tgt[g.height][v] == want_tgt)
            .collect();
        if opts.is_empty() {
            return Ok(());
        }
        candidates.push(opts);
    }
    let id = g.id;
    let mut table = vec![0usize; elems.len()];
    fill_one_op(th, m, lift_idx, id, &candidates, &mut table, 0, nodes, cap, sink)
}

#[allow(clippy::too_many_arguments)]
fn fill_one_op(
    th: &TheoryPresentation,
    m: &mut TheoryModel,
    lift_idx: usize,
    id: LiftId,
    candidates: &[Vec<usize>],
    table: &mut Vec<usize>,
    pos: usize,
    nodes: &mut usize,
    cap: usize,
    sink: &mut impl FnMut(&TheoryModel),
) -> Result<(), TheoryError> {
    if *nodes >= cap {
        return Ok(());
    }
    if pos == candidates.len() {
        m.ops.insert(id, table.clone());
        fill_ops(th, m, lift_idx + 1, nodes, cap, sink)?;
        m.ops.remove(&id);
        return Ok(());
    }
    for &v in &candidates[pos] {
        *nodes += 1;
        if *nodes >= cap {
            return Ok(());
        }
        table[pos] = v;
        fill_one_op(th, m, lift_idx, id, candidates, table, pos + 1, nodes, cap, sink)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::base_theory;

    fn t(v: &[usize]) -> TableOfDimensions {
        TableOfDimensions::new(v.to_vec()).unwrap()
    }

    #[test]
    fn base_models_are_globular_sets() {
        let th = base_theory();
        let models = enumerate_valid_models(&th, 1, 2, 100_000).unwrap();
        assert!(!models.is_empty());
        // all of them satisfy the (vacuous at level 1) relations
        for m in &models {
            assert!(m.validates(&th).unwrap());
        }
    }

    #[test]
    fn endpoints_separate_in_a_two_point_model() {
        let th = base_theory();
        let g1 = t(&[1]);
        let g0 = t(&[0]);
        let homs = theta0::hom_set(&g1, &g0);
        let a = MorphTerm::base(homs[0].clone());
        let b = MorphTerm::base(homs[1].clone());
        let budget = Budget::default().with_model_search(2, 50_000);
        let w = search_separating(&th, &a, &b, &budget).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn chain_elements_respect_compatibility() {
        let th = base_theory();
        let models = enumerate_valid_models(&th, 1, 2, 10_000).unwrap();
        let chain = t(&[1, 0, 1]);
        for m in models {
            for e in m.table_elements(&chain) {
                // source of the left arrow = target of the right arrow
                assert_eq!(m.src[0][e[0]], m.tgt[0][e[1]]);
            }
        }
    }
}
