//! Finite and finitely presented models of truncated theories: the
//! groupoid dictionary at level 1, free groupoids on graphs, and the
//! model-level functors (truncation, the singleton-hom embedding, and the
//! forgetful restriction).

use crate::globset::GlobularSet;
use crate::groups::FinGroup;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("relation `{relation}` fails at input {input:?}")]
    RelationViolation { relation: String, input: Vec<usize> },
    #[error("identified parallel pair acts differently at {0:?}")]
    NotParallelRespecting(Vec<usize>),
    #[error("operation `{op}` is not total: missing {input:?}")]
    NotTotal { op: String, input: Vec<usize> },
    #[error("expected a level-{expected} model, got level {got}")]
    WrongLevel { expected: usize, got: usize },
    #[error("levels do not match: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("map does not commute with the designated operations: {0}")]
    NotAModelMap(String),
    #[error("dimension {0} out of range for a level-{1} model")]
    DimOutOfRange(usize, usize),
    #[error("level {0} is not supported by this operation")]
    LevelUnsupported(usize),
    #[error("{0}")]
    Invalid(String),
}

/// A finite model of a truncated theory with designated composition,
/// identity and inverse operations per dimension, plus optional named lift
/// operations.
///
/// Level-0 and level-1 models are validated exactly. Level-2 models are
/// validated for globularity, operation boundaries, and the vertical
/// groupoid axioms in dimension 2; no claim of full coherence-model
/// validation is made above that.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinModel {
    pub level: usize,
    pub carriers: Vec<usize>,
    /// `src[d][c]`: source of the `(d+1)`-cell `c`.
    pub src: Vec<Vec<usize>>,
    pub tgt: Vec<Vec<usize>>,
    /// `comp[k-1]`: binary composition of `k`-cells along their
    /// `(k-1)`-boundary, in diagram order (`c(a,b)` composes `a` then `b`).
    pub comp: Vec<BTreeMap<(usize, usize), usize>>,
    /// `ident[k-1]`: the identity `k`-cell on a `(k-1)`-cell.
    pub ident: Vec<Vec<usize>>,
    /// `inv[k-1]`: the inverse of a `k`-cell.
    pub inv: Vec<Vec<usize>>,
    /// User-declared lift operations, validated for boundaries only.
    pub extra: BTreeMap<String, ExtraOp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraOp {
    /// Dimension of the output cells.
    pub out_dim: usize,
    pub table: BTreeMap<Vec<usize>, usize>,
}

impl FinModel {
    /// A level-0 model is a bare set.
    pub fn set(n: usize) -> FinModel {
        FinModel {
            level: 0,
            carriers: vec![n],
            src: vec![],
            tgt: vec![],
            comp: vec![],
            ident: vec![],
            inv: vec![],
            extra: BTreeMap::new(),
        }
    }

    pub fn count(&self, dim: usize) -> usize {
        self.carriers.get(dim).copied().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.carriers.len() != self.level + 1 {
            return Err(ModelError::Invalid(format!(
                "level {} model must have {} carriers",
                self.level,
                self.level + 1
            )));
        }
        for d in 1..=self.level {
            for table in [&self.src, &self.tgt] {
                if table[d - 1].len() != self.carriers[d] {
                    return Err(ModelError::NotTotal {
                        op: format!("boundary@{d}"),
                        input: vec![],
                    });
                }
                for &b in &table[d - 1] {
                    if b >= self.carriers[d - 1] {
                        return Err(ModelError::Invalid(format!(
                            "dangling boundary {b} at dim {d}"
                        )));
                    }
                }
            }
        }
        // globular identities
        for d in 2..=self.level {
            for c in 0..self.carriers[d] {
                let s = self.src[d - 1][c];
                let t = self.tgt[d - 1][c];
                if self.src[d - 2][s] != self.src[d - 2][t]
                    || self.tgt[d - 2][s] != self.tgt[d - 2][t]
                {
                    return Err(ModelError::RelationViolation {
                        relation: format!("globularity@{d}"),
                        input: vec![c],
                    });
                }
            }
        }
        // per-dimension groupoid structure
        for k in 1..=self.level {
            self.validate_dimension(k)?;
        }
        for (name, op) in &self.extra {
            for (input, &out) in &op.table {
                if out >= self.count(op.out_dim) {
                    return Err(ModelError::Invalid(format!(
                        "operation `{name}` maps {input:?} outside the carrier"
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_dimension(&self, k: usize) -> Result<(), ModelError> {
        let n = self.carriers[k];
        let comp = &self.comp[k - 1];
        let ident = &self.ident[k - 1];
        let inv = &self.inv[k - 1];
        if ident.len() != self.carriers[k - 1] || inv.len() != n {
            return Err(ModelError::NotTotal {
                op: format!("z{k}/inv{k}"),
                input: vec![],
            });
        }
        for (u, &z) in ident.iter().enumerate() {
            if self.src[k - 1][z] != u || self.tgt[k - 1][z] != u {
                return Err(ModelError::RelationViolation {
                    relation: format!("z{k} boundary"),
                    input: vec![u],
                });
            }
        }
        for a in 0..n {
            let i = inv[a];
            if self.src[k - 1][i] != self.tgt[k - 1][a] || self.tgt[k - 1][i] != self.src[k - 1][a]
            {
                return Err(ModelError::RelationViolation {
                    relation: format!("inv{k} boundary"),
                    input: vec![a],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let composable = self.tgt[k - 1][a] == self.src[k - 1][b];
                match comp.get(&(a, b)) {
                    None if composable => {
                        return Err(ModelError::NotTotal {
                            op: format!("c{k}"),
                            input: vec![a, b],
                        })
                    }
                    Some(_) if !composable => {
                        return Err(ModelError::Invalid(format!(
                            "c{k} defined on non-composable ({a},{b})"
                        )))
                    }
                    Some(&c) => {
                        if self.src[k - 1][c] != self.src[k - 1][a]
                            || self.tgt[k - 1][c] != self.tgt[k - 1][b]
                        {
                            return Err(ModelError::RelationViolation {
                                relation: format!("c{k} boundary"),
                                input: vec![a, b],
                            });
                        }
                    }
                    None => {}
                }
            }
        }
        // units, inverses, associativity
        for a in 0..n {
            let s = self.src[k - 1][a];
            let t = self.tgt[k - 1][a];
            if comp[&(ident[s], a)] != a || comp[&(a, ident[t])] != a {
                return Err(ModelError::RelationViolation {
                    relation: format!("c{k} unit"),
                    input: vec![a],
                });
            }
            if comp[&(a, inv[a])] != ident[s] || comp[&(inv[a], a)] != ident[t] {
                return Err(ModelError::RelationViolation {
                    relation: format!("c{k} inverse"),
                    input: vec![a],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.tgt[k - 1][a] != self.src[k - 1][b] {
                    continue;
                }
                for c in 0..n {
                    if self.tgt[k - 1][b] != self.src[k - 1][c] {
                        continue;
                    }
                    if comp[&(comp[&(a, b)], c)] != comp[&(a, comp[&(b, c)])] {
                        return Err(ModelError::RelationViolation {
                            relation: format!("c{k} associativity"),
                            input: vec![a, b, c],
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite groupoid: category with all morphisms invertible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinGroupoid {
    pub n_objects: usize,
    /// `(src, tgt)` per morphism.
    pub mor: Vec<(usize, usize)>,
    /// `comp[(f, g)]` is "f then g", defined when `tgt f = src g`.
    pub comp: BTreeMap<(usize, usize), usize>,
    pub id: Vec<usize>,
    pub inv: Vec<usize>,
}

impl FinGroupoid {
    pub fn n_morphisms(&self) -> usize {
        self.mor.len()
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        groupoid_to_model(self).validate()
    }

    pub fn discrete(n: usize) -> FinGroupoid {
        FinGroupoid {
            n_objects: n,
            mor: (0..n).map(|i| (i, i)).collect(),
            comp: (0..n).map(|i| ((i, i), i)).collect(),
            id: (0..n).collect(),
            inv: (0..n).collect(),
        }
    }

    pub fn point() -> FinGroupoid {
        FinGroupoid::discrete(1)
    }

    /// Connected groupoid on `m` objects with vertex group `g`: morphisms
    /// are triples (from, to, group element).
    pub fn connected(m: usize, g: &FinGroup) -> FinGroupoid {
        assert!(m >= 1);
        let n = g.order();
        let idx = |i: usize, j: usize, a: usize| (i * m + j) * n + a;
        let mut mor = vec![(0, 0); m * m * n];
        let mut comp = BTreeMap::new();
        for i in 0..m {
            for j in 0..m {
                for a in 0..n {
                    mor[idx(i, j, a)] = (i, j);
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for a in 0..n {
                        for b in 0..n {
                            comp.insert((idx(i, j, a), idx(j, k, b)), idx(i, k, g.mul[a][b]));
                        }
                    }
                }
            }
        }
        FinGroupoid {
            n_objects: m,
            mor,
            comp,
            id: (0..m).map(|i| idx(i, i, 0)).collect(),
            inv: (0..m * m * n)
                .map(|f| {
                    let (i, j) = ((f / n) / m, (f / n) % m);
                    let a = f % n;
                    idx(j, i, g.inv[a])
                })
                .collect(),
        }
    }

    pub fn one_object(g: &FinGroup) -> FinGroupoid {
        FinGroupoid::connected(1, g)
    }

    /// All parallel pairs connected by exactly one morphism.
    pub fn indiscrete(n: usize) -> FinGroupoid {
        FinGroupoid::connected(n, &FinGroup::trivial())
    }

    pub fn walking_iso() -> FinGroupoid {
        FinGroupoid::indiscrete(2)
    }

    pub fn disjoint_union(a: &FinGroupoid, b: &FinGroupoid) -> FinGroupoid {
        let o = a.n_objects;
        let m = a.n_morphisms();
        let mor: Vec<(usize, usize)> = a
            .mor
            .iter()
            .copied()
            .chain(b.mor.iter().map(|&(s, t)| (s + o, t + o)))
            .collect();
        let mut comp = a.comp.clone();
        for (&(f, g), &h) in &b.comp {
            comp.insert((f + m, g + m), h + m);
        }
        FinGroupoid {
            n_objects: o + b.n_objects,
            mor,
            comp,
            id: a
                .id
                .iter()
                .copied()
                .chain(b.id.iter().map(|&i| i + m))
                .collect(),
            inv: a
                .inv
                .iter()
                .copied()
                .chain(b.inv.iter().map(|&i| i + m))
                .collect(),
        }
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.mor.len())
            .filter(|&f| self.mor[f] == (a, b))
            .collect()
    }
}

/// A functor between finite groupoids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidMap {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl GroupoidMap {
    pub fn identity(g: &FinGroupoid) -> GroupoidMap {
        GroupoidMap {
            obj: (0..g.n_objects).collect(),
            mor: (0..g.n_morphisms()).collect(),
        }
    }

    pub fn is_functor(&self, dom: &FinGroupoid, cod: &FinGroupoid) -> bool {
        if self.obj.len() != dom.n_objects || self.mor.len() != dom.n_morphisms() {
            return false;
        }
        for (f, &(s, t)) in dom.mor.iter().enumerate() {
            let img = self.mor[f];
            if cod.mor[img] != (self.obj[s], self.obj[t]) {
                return false;
            }
        }
        for (&(f, g), &h) in &dom.comp {
            if cod.comp[&(self.mor[f], self.mor[g])] != self.mor[h] {
                return false;
            }
        }
        dom.id
            .iter()
            .enumerate()
            .all(|(x, &i)| cod.id[self.obj[x]] == self.mor[i])
    }
}

/// Transcribes a groupoid as a level-1 model.
pub fn groupoid_to_model(g: &FinGroupoid) -> FinModel {
    FinModel {
        level: 1,
        carriers: vec![g.n_objects, g.n_morphisms()],
        src: vec![g.mor.iter().map(|&(s, _)| s).collect()],
        tgt: vec![g.mor.iter().map(|&(_, t)| t).collect()],
        comp: vec![g.comp.clone()],
        ident: vec![g.id.clone()],
        inv: vec![g.inv.clone()],
        extra: BTreeMap::new(),
    }
}

/// Inverse transcription; the round trip is the identity on carriers.
pub fn model_to_groupoid(m: &FinModel) -> Result<FinGroupoid, ModelError> {
    if m.level != 1 {
        return Err(ModelError::WrongLevel {
            expected: 1,
            got: m.level,
        });
    }
    Ok(FinGroupoid {
        n_objects: m.carriers[0],
        mor: (0..m.carriers[1])
            .map(|c| (m.src[0][c], m.tgt[0][c]))
            .collect(),
        comp: m.comp[0].clone(),
        id: m.ident[0].clone(),
        inv: m.inv[0].clone(),
    })
}

/// Quotients the top carrier by the homotopy relation and induces the
/// operations; carriers below stay fixed.
pub fn truncate_model(m: &FinModel) -> Result<FinModel, ModelError> {
    if m.level == 0 {
        return Err(ModelError::WrongLevel {
            expected: 1,
            got: 0,
        });
    }
    let n = m.level - 1;
    // classes of X_n under "connected by an (n+1)-cell"
    let mut parent: Vec<usize> = (0..m.carriers[n]).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for c in 0..m.carriers[n + 1] {
        let (a, b) = (m.src[n][c], m.tgt[n][c]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..m.carriers[n] {
        if find(&mut parent, i) == i {
            reps.push(i);
        }
    }
    let mut class_of = vec![0usize; m.carriers[n]];
    for i in 0..m.carriers[n] {
        let r = find(&mut parent, i);
        class_of[i] = reps.iter().position(|&x| x == r).unwrap();
    }
    let keep = n.saturating_sub(1);
    let mut out = FinModel {
        level: n,
        carriers: m.carriers[..n].to_vec(),
        src: m.src[..keep].to_vec(),
        tgt: m.tgt[..keep].to_vec(),
        comp: m.comp[..keep].to_vec(),
        ident: m.ident[..keep].to_vec(),
        inv: m.inv[..keep].to_vec(),
        extra: BTreeMap::new(),
    };
    out.carriers.push(reps.len());
    if n >= 1 {
        // boundaries descend (homotopic cells are parallel)
        let mut src_col = vec![0usize; reps.len()];
        let mut tgt_col = vec![0usize; reps.len()];
        for (cls, &rep) in reps.iter().enumerate() {
            src_col[cls] = m.src[n - 1][rep];
            tgt_col[cls] = m.tgt[n - 1][rep];
        }
        for c in 0..m.carriers[n] {
            let cls = class_of[c];
            if m.src[n - 1][c] != src_col[cls] || m.tgt[n - 1][c] != tgt_col[cls] {
                return Err(ModelError::NotParallelRespecting(vec![c, reps[cls]]));
            }
        }
        out.src.push(src_col);
        out.tgt.push(tgt_col);
        // induced composition: must be independent of representatives
        let mut comp: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (&(a, b), &c) in &m.comp[n - 1] {
            let key = (class_of[a], class_of[b]);
            let val = class_of[c];
            if let Some(&prev) = comp.get(&key) {
                if prev != val {
                    return Err(ModelError::NotParallelRespecting(vec![a, b]));
                }
            } else {
                comp.insert(key, val);
            }
        }
        out.comp.push(comp);
        out.ident
            .push(m.ident[n - 1].iter().map(|&z| class_of[z]).collect());
        let mut inv_col = vec![0usize; reps.len()];
        for (cls, &rep) in reps.iter().enumerate() {
            inv_col[cls] = class_of[m.inv[n - 1][rep]];
        }
        out.inv.push(inv_col);
    }
    Ok(out)
}

/// Adds a singleton top dimension: exactly one (identity-like) cell on each
/// top cell. This is the right adjoint to top-dimension truncation:
/// `truncate_model(d_embed(m)) == m`, and a map is a weak equivalence
/// exactly when its embedding is.
pub fn d_embed(m: &FinModel) -> FinModel {
    let n = m.level;
    let cells = m.carriers[n];
    let mut out = m.clone();
    out.level = n + 1;
    out.carriers.push(cells);
    out.src.push((0..cells).collect());
    out.tgt.push((0..cells).collect());
    // the new cells compose along dimension n only with themselves
    let comp = (0..cells).map(|a| ((a, a), a)).collect();
    out.comp.push(comp);
    out.ident.push((0..cells).collect());
    out.inv.push((0..cells).collect());
    out
}

/// Restriction to an earlier stage: designated tables stay, user-declared
/// lift operations are dropped.
pub fn forget_model(m: &FinModel) -> FinModel {
    let mut out = m.clone();
    out.extra.clear();
    out
}

/// The underlying globular set of a model (forgetting to the base stage).
pub fn underlying_globular_set(m: &FinModel) -> GlobularSet {
    let labels = (0..=m.level)
        .map(|d| (0..m.count(d)).map(|c| format!("c{d}_{c}")).collect())
        .collect();
    GlobularSet::new(labels, m.src.clone(), m.tgt.clone()).expect("models are globular")
}

/// A map of finite models at the same level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinModelMap {
    pub cells: Vec<Vec<usize>>,
}

impl FinModelMap {
    pub fn identity(m: &FinModel) -> FinModelMap {
        FinModelMap {
            cells: (0..=m.level).map(|d| (0..m.count(d)).collect()).collect(),
        }
    }

    pub fn commutes(&self, dom: &FinModel, cod: &FinModel) -> Result<(), ModelError> {
        if dom.level != cod.level {
            return Err(ModelError::LevelMismatch(dom.level, cod.level));
        }
        for d in 0..=dom.level {
            if self.cells.get(d).map_or(true, |c| c.len() != dom.count(d)) {
                return Err(ModelError::NotAModelMap(format!("not total at dim {d}")));
            }
        }
        for d in 1..=dom.level {
            for c in 0..dom.count(d) {
                let img = self.cells[d][c];
                if cod.src[d - 1][img] != self.cells[d - 1][dom.src[d - 1][c]]
                    || cod.tgt[d - 1][img] != self.cells[d - 1][dom.tgt[d - 1][c]]
                {
                    return Err(ModelError::NotAModelMap(format!(
                        "boundary mismatch at dim {d} cell {c}"
                    )));
                }
            }
            for (&(a, b), &c) in &dom.comp[d - 1] {
                let want = cod.comp[d - 1][&(self.cells[d][a], self.cells[d][b])];
                if want != self.cells[d][c] {
                    return Err(ModelError::NotAModelMap(format!(
                        "composition not preserved at dim {d} ({a},{b})"
                    )));
                }
            }
            for (u, &z) in dom.ident[d - 1].iter().enumerate() {
                if cod.ident[d - 1][self.cells[d - 1][u]] != self.cells[d][z] {
                    return Err(ModelError::NotAModelMap(format!(
                        "identities not preserved at dim {d} object {u}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A letter in a reduced word over the edges of a presented groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub edge: usize,
    pub inverted: bool,
}

pub type Word = Vec<Letter>;

/// A finitely presented groupoid: free on a graph, optionally with parallel
/// edges identified (the only quotients this workbench constructs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresGroupoid {
    pub n_objects: usize,
    pub edges: Vec<(usize, usize)>,
    /// `edge_class[e]` is the canonical representative of `e`.
    pub edge_class: Vec<usize>,
}

impl PresGroupoid {
    pub fn free(n_objects: usize, edges: Vec<(usize, usize)>) -> PresGroupoid {
        let m = edges.len();
        PresGroupoid {
            n_objects,
            edges,
            edge_class: (0..m).collect(),
        }
    }

    pub fn empty() -> PresGroupoid {
        PresGroupoid::free(0, vec![])
    }

    pub fn point() -> PresGroupoid {
        PresGroupoid::free(1, vec![])
    }

    /// Identifies two parallel edges (the collapse quotient).
    pub fn identify_edges(&mut self, a: usize, b: usize) -> Result<(), ModelError> {
        if self.edges[a] != self.edges[b] {
            return Err(ModelError::Invalid(
                "only parallel edges can be identified".to_string(),
            ));
        }
        let (ra, rb) = (self.edge_class[a], self.edge_class[b]);
        let keep = ra.min(rb);
        for c in self.edge_class.iter_mut() {
            if *c == ra || *c == rb {
                *c = keep;
            }
        }
        Ok(())
    }

    /// Canonical edge representatives.
    pub fn edge_reps(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = self.edge_class.clone();
        reps.sort();
        reps.dedup();
        reps
    }

    /// Free reduction after canonicalizing letters.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut out: Word = Vec::with_capacity(w.len());
        for l in w {
            let canon = Letter {
                edge: self.edge_class[l.edge],
                inverted: l.inverted,
            };
            if let Some(last) = out.last() {
                if last.edge == canon.edge && last.inverted != canon.inverted {
                    out.pop();
                    continue;
                }
            }
            out.push(canon);
        }
        out
    }

    pub fn endpoints(&self, w: &Word) -> Option<(usize, usize)> {
        let mut it = w.iter();
        let first = it.next()?;
        let start = if first.inverted {
            self.edges[first.edge].1
        } else {
            self.edges[first.edge].0
        };
        let mut cur = if first.inverted {
            self.edges[first.edge].0
        } else {
            self.edges[first.edge].1
        };
        for l in it {
            let (s, t) = self.edges[l.edge];
            let (ls, lt) = if l.inverted { (t, s) } else { (s, t) };
            if ls != cur {
                return None;
            }
            cur = lt;
        }
        Some((start, cur))
    }

    pub fn compose(&self, a: &Word, b: &Word) -> Word {
        let mut w = a.clone();
        w.extend(b.iter().cloned());
        self.reduce(&w)
    }

    pub fn invert(&self, w: &Word) -> Word {
        let out: Word = w
            .iter()
            .rev()
            .map(|l| Letter {
                edge: l.edge,
                inverted: !l.inverted,
            })
            .collect();
        self.reduce(&out)
    }

    /// Component representative per object.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n_objects).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for &e in &self.edge_reps() {
            let (s, t) = self.edges[e];
            let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
            if rs != rt {
                parent[rs.max(rt)] = rs.min(rt);
            }
        }
        (0..self.n_objects)
            .map(|i| find(&mut parent, i))
            .collect()
    }

    /// Free rank of the vertex group at `x`: edges − vertices + 1 within the
    /// component of `x`.
    pub fn pi1_rank(&self, x: usize) -> usize {
        let comps = self.components();
        let c = comps[x];
        let verts = comps.iter().filter(|&&r| r == c).count();
        let edges = self
            .edge_reps()
            .iter()
            .filter(|&&e| comps[self.edges[e].0] == c)
            .count();
        edges + 1 - verts
    }
}

/// A map of presented groupoids: objects to objects, edges to words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresMap {
    pub obj: Vec<usize>,
    pub edge: Vec<Word>,
}

impl PresMap {
    pub fn respects(&self, dom: &PresGroupoid, cod: &PresGroupoid) -> bool {
        if self.obj.len() != dom.n_objects || self.edge.len() != dom.edges.len() {
            return false;
        }
        for (e, &(s, t)) in dom.edges.iter().enumerate() {
            let w = &self.edge[e];
            let want = (self.obj[s], self.obj[t]);
            if w.is_empty() {
                if want.0 != want.1 {
                    return false;
                }
            } else if cod.endpoints(w) != Some(want) {
                return false;
            }
            // identified edges must map to equal words
            let rep = dom.edge_class[e];
            if rep != e && cod.reduce(&self.edge[rep]) != cod.reduce(w) {
                return false;
            }
        }
        true
    }
}

/// Free groupoid on a globular set concentrated in dimensions ≤ 1.
pub fn free_groupoid(x: &GlobularSet) -> Result<PresGroupoid, ModelError> {
    let counts = x.counts();
    if counts.len() > 2 {
        return Err(ModelError::DimOutOfRange(counts.len() - 1, 1));
    }
    let n_objects = x.count(0);
    let edges = (0..x.count(1))
        .map(|e| (x.src_of(1, e), x.tgt_of(1, e)))
        .collect();
    Ok(PresGroupoid::free(n_objects, edges))
}

/// All groupoids (up to iso) with at most `max_obj` objects and `max_mor`
/// morphisms, assembled from connected pieces.
pub fn small_groupoids(max_obj: usize, max_mor: usize) -> Vec<(String, FinGroupoid)> {
    assert!(max_obj <= 3, "corpus generator built for ≤ 3 objects");
    struct Piece {
        name: String,
        objs: usize,
        mors: usize,
        g: FinGroupoid,
    }
    let mut pieces: Vec<Piece> = Vec::new();
    for g in crate::groups::groups_of_order_up_to(max_mor.min(12)) {
        pieces.push(Piece {
            name: format!("B({})", g.name),
            objs: 1,
            mors: g.order(),
            g: FinGroupoid::one_object(&g),
        });
    }
    if max_obj >= 2 {
        for g in crate::groups::groups_of_order_up_to(3) {
            let mors = 4 * g.order();
            if mors <= max_mor {
                pieces.push(Piece {
                    name: format!("conn2({})", g.name),
                    objs: 2,
                    mors,
                    g: FinGroupoid::connected(2, &g),
                });
            }
        }
    }
    if max_obj >= 3 && 9 <= max_mor {
        pieces.push(Piece {
            name: "indiscrete3".to_string(),
            objs: 3,
            mors: 9,
            g: FinGroupoid::indiscrete(3),
        });
    }
    let mut out: Vec<(String, FinGroupoid)> = Vec::new();
    let np = pieces.len();
    for i in 0..np {
        let p1 = &pieces[i];
        if p1.objs > max_obj || p1.mors > max_mor {
            continue;
        }
        out.push((p1.name.clone(), p1.g.clone()));
        for j in i..np {
            let p2 = &pieces[j];
            if p1.objs + p2.objs > max_obj || p1.mors + p2.mors > max_mor {
                continue;
            }
            let u = FinGroupoid::disjoint_union(&p1.g, &p2.g);
            out.push((format!("{}+{}", p1.name, p2.name), u.clone()));
            for p3 in pieces.iter().skip(j) {
                if p1.objs + p2.objs + p3.objs > max_obj
                    || p1.mors + p2.mors + p3.mors > max_mor
                {
                    continue;
                }
                out.push((
                    format!("{}+{}+{}", p1.name, p2.name, p3.name),
                    FinGroupoid::disjoint_union(&u, &p3.g),
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globset;

    #[test]
    fn walking_iso_is_a_valid_model() {
        let g = FinGroupoid::walking_iso();
        assert_eq!(g.n_objects, 2);
        assert_eq!(g.n_morphisms(), 4);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn z2_one_object_is_valid() {
        let g = FinGroupoid::one_object(&FinGroup::cyclic(2));
        let m = groupoid_to_model(&g);
        assert_eq!(m.carriers, vec![1, 2]);
        assert!(m.validate().is_ok());
    }

    #[test]
    fn broken_associativity_is_rejected() {
        let g = FinGroupoid::one_object(&FinGroup::cyclic(3));
        let mut m = groupoid_to_model(&g);
        m.comp[0].insert((1, 1), 1);
        assert!(matches!(
            m.validate(),
            Err(ModelError::RelationViolation { .. })
        ));
    }

    #[test]
    fn round_trip_is_identity() {
        for g in [
            FinGroupoid::walking_iso(),
            FinGroupoid::one_object(&FinGroup::cyclic(2)),
            FinGroupoid::discrete(3),
        ] {
            let m = groupoid_to_model(&g);
            let g2 = model_to_groupoid(&m).unwrap();
            assert_eq!(g, g2);
        }
    }

    #[test]
    fn model_to_groupoid_needs_level_one() {
        let m = FinModel::set(2);
        assert!(matches!(
            model_to_groupoid(&m),
            Err(ModelError::WrongLevel { .. })
        ));
    }

    #[test]
    fn truncating_walking_iso_collapses() {
        let m = groupoid_to_model(&FinGroupoid::walking_iso());
        let t = truncate_model(&m).unwrap();
        assert_eq!(t.level, 0);
        assert_eq!(t.carriers, vec![1]);
    }

    #[test]
    fn truncating_discrete_model_keeps_objects() {
        let m = groupoid_to_model(&FinGroupoid::discrete(3));
        let t = truncate_model(&m).unwrap();
        assert_eq!(t.carriers, vec![3]);
    }

    #[test]
    fn d_embed_of_two_point_set_is_discrete() {
        let m = FinModel::set(2);
        let e = d_embed(&m);
        assert_eq!(e.level, 1);
        assert_eq!(e.carriers, vec![2, 2]);
        assert!(e.validate().is_ok());
        let g = model_to_groupoid(&e).unwrap();
        assert_eq!(g, FinGroupoid::discrete(2));
    }

    #[test]
    fn d_embed_walking_iso_has_singleton_top_cells() {
        let m = groupoid_to_model(&FinGroupoid::walking_iso());
        let e = d_embed(&m);
        assert_eq!(e.level, 2);
        assert_eq!(e.carriers[2], e.carriers[1]);
        for c in 0..e.carriers[2] {
            assert_eq!(e.src[1][c], e.tgt[1][c]);
        }
        assert!(e.validate().is_ok());
    }

    #[test]
    fn truncate_after_embed_is_identity() {
        for g in [
            FinGroupoid::walking_iso(),
            FinGroupoid::one_object(&FinGroup::cyclic(2)),
            FinGroupoid::discrete(2),
        ] {
            let m = groupoid_to_model(&g);
            let back = truncate_model(&d_embed(&m)).unwrap();
            assert_eq!(back.carriers, m.carriers);
            assert_eq!(back.comp, m.comp);
        }
    }

    #[test]
    fn forget_drops_extras_only() {
        let g = FinGroupoid::walking_iso();
        let mut m = groupoid_to_model(&g);
        m.extra.insert(
            "user".to_string(),
            ExtraOp {
                out_dim: 1,
                table: BTreeMap::new(),
            },
        );
        let f = forget_model(&m);
        assert!(f.extra.is_empty());
        assert_eq!(f.comp, m.comp);
        let u = underlying_globular_set(&f);
        assert_eq!(u.counts(), vec![2, 4]);
    }

    #[test]
    fn free_groupoid_on_disk_is_walking_iso_shape() {
        let pg = free_groupoid(&globset::disk(1)).unwrap();
        assert_eq!(pg.n_objects, 2);
        assert_eq!(pg.edges.len(), 1);
        assert_eq!(pg.pi1_rank(0), 0);
    }

    #[test]
    fn free_groupoid_on_sphere_has_rank_one() {
        let pg = free_groupoid(&globset::sphere(1)).unwrap();
        assert_eq!(pg.pi1_rank(0), 1);
    }

    #[test]
    fn loop_gives_infinite_cyclic() {
        let raw = crate::globset::RawGlobularSet {
            dims: vec![vec!["x".into()], vec!["a".into()]],
            src: vec![vec![("a".into(), "x".into())]],
            tgt: vec![vec![("a".into(), "x".into())]],
        };
        let x = crate::globset::validate_globular_set(&raw).unwrap();
        let pg = free_groupoid(&x).unwrap();
        assert_eq!(pg.pi1_rank(0), 1);
        let a = vec![Letter {
            edge: 0,
            inverted: false,
        }];
        let aa = pg.compose(&a, &a);
        assert_eq!(aa.len(), 2);
        let unit = pg.compose(&a, &pg.invert(&a));
        assert!(unit.is_empty());
    }

    #[test]
    fn word_reduction_cancels_random_insertions() {
        let pg = free_groupoid(&globset::sphere(1)).unwrap();
        let w = vec![
            Letter {
                edge: 0,
                inverted: false,
            },
            Letter {
                edge: 1,
                inverted: true,
            },
        ];
        for pos in 0..=w.len() {
            for e in 0..2 {
                for invd in [false, true] {
                    let mut noisy = w.clone();
                    noisy.insert(
                        pos,
                        Letter {
                            edge: e,
                            inverted: !invd,
                        },
                    );
                    noisy.insert(
                        pos,
                        Letter {
                            edge: e,
                            inverted: invd,
                        },
                    );
                    assert_eq!(pg.reduce(&noisy), pg.reduce(&w));
                }
            }
        }
    }

    #[test]
    fn small_groupoid_corpus_is_within_bounds() {
        let corpus = small_groupoids(3, 12);
        assert!(!corpus.is_empty());
        for (name, g) in &corpus {
            assert!(g.n_objects <= 3, "{name}");
            assert!(g.n_morphisms() <= 12, "{name}");
            assert!(g.validate().is_ok(), "{name}");
        }
    }
}
