//! Tables of dimensions, heights, and the base theory of globular pasting
//! shapes: computable finite hom-sets and composition.
//!
//! Objects are tables of dimensions; a morphism `m⃗ → n⃗` is stored as the
//! globular map `realize(n⃗) → realize(m⃗)` between the glued-disk
//! realizations. Hom-sets are memoized process-wide; the cache is keyed by
//! `(dom, cod)` and concurrent fills of the same key produce identical
//! values, so the cache is coherent.

use crate::globset::{self, GlobMap, Realization};
use crate::Budget;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table must be nonempty")]
    Empty,
    #[error("table must have odd length")]
    EvenLength,
    /// 1-based index of the valley entry that is not strictly below both
    /// neighbouring peaks.
    #[error("zig-zag violation at entry {0}")]
    ZigZagViolation(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Theta0Error {
    #[error("cannot compose: codomain {0} of the first map is not the domain {1} of the second")]
    DomainMismatch(TableOfDimensions, TableOfDimensions),
}

/// An odd tuple `(n_1, …, n_{2k+1})` whose even entries (valleys) sit
/// strictly below both neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableOfDimensions(Vec<usize>);

impl TableOfDimensions {
    pub fn new(entries: Vec<usize>) -> Result<Self, TableError> {
        if entries.is_empty() {
            return Err(TableError::Empty);
        }
        if entries.len() % 2 == 0 {
            return Err(TableError::EvenLength);
        }
        for i in (1..entries.len()).step_by(2) {
            if entries[i] >= entries[i - 1] || entries[i] >= entries[i + 1] {
                return Err(TableError::ZigZagViolation(i + 1));
            }
        }
        Ok(TableOfDimensions(entries))
    }

    /// The one-entry table `(k)`.
    pub fn globe(k: usize) -> Self {
        TableOfDimensions(vec![k])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Maximum entry.
    pub fn height(&self) -> usize {
        *self.0.iter().max().expect("tables are nonempty")
    }

    /// Peak entries (odd positions in 1-based numbering).
    pub fn peaks(&self) -> Vec<usize> {
        self.0.iter().step_by(2).copied().collect()
    }

    /// Valley entries.
    pub fn valleys(&self) -> Vec<usize> {
        self.0.iter().skip(1).step_by(2).copied().collect()
    }

    /// Is this a single-globe table `(k)`?
    pub fn as_globe(&self) -> Option<usize> {
        if self.0.len() == 1 {
            Some(self.0[0])
        } else {
            None
        }
    }
}

impl fmt::Display for TableOfDimensions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Parses `(1,0,2)` style table literals.
impl std::str::FromStr for TableOfDimensions {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries: Result<Vec<usize>, _> = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect();
        let entries = entries.map_err(|e| format!("bad table entry: {e}"))?;
        TableOfDimensions::new(entries).map_err(|e| e.to_string())
    }
}

/// Validates a raw tuple.
pub fn validate_table(raw: &[usize]) -> Result<TableOfDimensions, TableError> {
    TableOfDimensions::new(raw.to_vec())
}

static REALIZE_CACHE: LazyLock<RwLock<HashMap<TableOfDimensions, Arc<Realization>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Memoized realization of a table.
pub fn realize(t: &TableOfDimensions) -> Arc<Realization> {
    if let Some(r) = REALIZE_CACHE.read().unwrap().get(t) {
        return r.clone();
    }
    let r = Arc::new(globset::realize_table(t));
    REALIZE_CACHE
        .write()
        .unwrap()
        .entry(t.clone())
        .or_insert(r)
        .clone()
}

/// A morphism `dom → cod` of the base theory, carried by the globular map
/// `realize(cod) → realize(dom)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Theta0Morphism {
    pub dom: TableOfDimensions,
    pub cod: TableOfDimensions,
    pub map: GlobMap,
}

impl Theta0Morphism {
    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.map.is_identity()
    }
}

impl fmt::Display for Theta0Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((dim, ord)) = cell_of_morphism(self) {
            let r = realize(&self.dom);
            write!(
                f,
                "base({} : {} -> {})",
                r.glob.label(dim, ord),
                self.dom,
                self.cod
            )
        } else {
            write!(f, "base({} -> {} {})", self.dom, self.cod, self.map)
        }
    }
}

static HOM_CACHE: LazyLock<
    RwLock<HashMap<(TableOfDimensions, TableOfDimensions), Arc<Vec<Theta0Morphism>>>>,
> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// The complete hom-set `dom → cod`, in the canonical lexicographic order of
/// the underlying globular maps. Memoized.
pub fn hom_set(dom: &TableOfDimensions, cod: &TableOfDimensions) -> Arc<Vec<Theta0Morphism>> {
    let key = (dom.clone(), cod.clone());
    if let Some(h) = HOM_CACHE.read().unwrap().get(&key) {
        return h.clone();
    }
    let rd = realize(dom);
    let rc = realize(cod);
    let maps = globset::enumerate_maps(&rc.glob, &rd.glob);
    let homs: Vec<Theta0Morphism> = maps
        .into_iter()
        .map(|map| Theta0Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
        .collect();
    let arc = Arc::new(homs);
    HOM_CACHE
        .write()
        .unwrap()
        .entry(key)
        .or_insert(arc)
        .clone()
}

/// Canonical index of a morphism within its hom-set enumeration.
pub fn hom_index(m: &Theta0Morphism) -> Option<usize> {
    hom_set(&m.dom, &m.cod).iter().position(|h| h == m)
}

pub fn identity(t: &TableOfDimensions) -> Theta0Morphism {
    let r = realize(t);
    Theta0Morphism {
        dom: t.clone(),
        cod: t.clone(),
        map: GlobMap::identity(&r.glob),
    }
}

/// `g ∘ f` for `f : A → B`, `g : B → C`.
pub fn compose(g: &Theta0Morphism, f: &Theta0Morphism) -> Result<Theta0Morphism, Theta0Error> {
    if f.cod != g.dom {
        return Err(Theta0Error::DomainMismatch(f.cod.clone(), g.dom.clone()));
    }
    Ok(Theta0Morphism {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        map: f.map.after(&g.map),
    })
}

/// The `k`-cells of `realize(p⃗)` are in canonical bijection with morphisms
/// `p⃗ → (k)`; this is the forward direction.
pub fn morphism_from_cell(p: &TableOfDimensions, dim: usize, ord: usize) -> Theta0Morphism {
    let r = realize(p);
    let mut cells: Vec<Vec<usize>> = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        cells.push(vec![
            r.glob.iter_src(dim, ord, d),
            r.glob.iter_tgt(dim, ord, d),
        ]);
    }
    cells.push(vec![ord]);
    Theta0Morphism {
        dom: p.clone(),
        cod: TableOfDimensions::globe(dim),
        map: GlobMap { cells },
    }
}

/// Inverse of [`morphism_from_cell`]: the cell a globe-valued morphism
/// classifies, i.e. the image of the disk's top cell.
pub fn cell_of_morphism(m: &Theta0Morphism) -> Option<(usize, usize)> {
    let k = m.cod.as_globe()?;
    Some((k, m.map.cells[k][0]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Face {
    Src,
    Tgt,
}

/// The face morphism `(k) → (v)` (for `v ≤ k`) classifying the source or
/// target `v`-face of the standard disk.
pub fn globe_face(k: usize, v: usize, face: Face) -> Theta0Morphism {
    assert!(v <= k);
    let ord = if v == k {
        0
    } else {
        match face {
            Face::Src => 0,
            Face::Tgt => 1,
        }
    };
    morphism_from_cell(&TableOfDimensions::globe(k), v, ord)
}

/// Projection `q⃗ → (q_i)` onto the `i`-th peak component.
pub fn peak_projection(q: &TableOfDimensions, i: usize) -> Theta0Morphism {
    let peaks = q.peaks();
    let r = realize(q);
    let dim = peaks[i];
    let ord = r.cell_of(i, (dim, 0));
    morphism_from_cell(q, dim, ord)
}

/// All valid tables with length ≤ `budget.max_table_len` and entries ≤
/// `budget.max_entry`, optionally capped in height, in (length, lex) order.
pub fn enumerate_tables(budget: &Budget, max_height: Option<usize>) -> Vec<TableOfDimensions> {
    let cap = match max_height {
        Some(h) => h.min(budget.max_entry),
        None => budget.max_entry,
    };
    let mut out = Vec::new();
    let max_peaks = (budget.max_table_len + 1) / 2;
    for n_peaks in 1..=max_peaks.max(1) {
        let mut current: Vec<usize> = Vec::new();
        gen_tables(n_peaks, cap, &mut current, &mut out);
    }
    out
}

fn gen_tables(
    n_peaks: usize,
    cap: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<TableOfDimensions>,
) {
    if current.len() == 2 * n_peaks - 1 {
        out.push(TableOfDimensions(current.clone()));
        return;
    }
    if current.len() % 2 == 0 {
        // next entry is a peak; must exceed the previous valley
        let lo = if current.is_empty() {
            0
        } else {
            current[current.len() - 1] + 1
        };
        for p in lo..=cap {
            current.push(p);
            gen_tables(n_peaks, cap, current, out);
            current.pop();
        }
    } else {
        // next entry is a valley; must sit strictly below the previous peak,
        // and below the next peak (checked when the peak is chosen)
        let prev = current[current.len() - 1];
        for v in 0..prev {
            current.push(v);
            gen_tables(n_peaks, cap, current, out);
            current.pop();
        }
    }
}

/// Number of peak-component tuples `m⃗ → (n_i)` compatible on shared faces;
/// by the limit decomposition this equals `|hom_set(m⃗, n⃗)|`. Computed from
/// globe-valued hom-sets and composition only.
pub fn constrained_product_count(m: &TableOfDimensions, n: &TableOfDimensions) -> usize {
    let peaks = n.peaks();
    let valleys = n.valleys();
    let candidate_sets: Vec<Arc<Vec<Theta0Morphism>>> = peaks
        .iter()
        .map(|&p| hom_set(m, &TableOfDimensions::globe(p)))
        .collect();
    if candidate_sets.iter().any(|s| s.is_empty()) {
        return 0;
    }
    let mut count = 0usize;
    let mut choice: Vec<usize> = vec![0; peaks.len()];
    'outer: loop {
        // check compatibility of the current choice
        let mut ok = true;
        for (j, &v) in valleys.iter().enumerate() {
            let left = &candidate_sets[j][choice[j]];
            let right = &candidate_sets[j + 1][choice[j + 1]];
            let lf = compose(&globe_face(peaks[j], v, Face::Src), left).unwrap();
            let rf = compose(&globe_face(peaks[j + 1], v, Face::Tgt), right).unwrap();
            if lf != rf {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
        // advance odometer
        for j in 0..peaks.len() {
            choice[j] += 1;
            if choice[j] < candidate_sets[j].len() {
                continue 'outer;
            }
            choice[j] = 0;
        }
        break;
    }
    count
}

/// Entrywise `min(e, n)` followed by collapsing runs of `n` (degenerate
/// valleys glue whole disks together). Returns the truncated table and the
/// map from old peak components to new ones.
pub fn truncate_table(t: &TableOfDimensions, n: usize) -> (TableOfDimensions, Vec<usize>) {
    let capped: Vec<usize> = t.0.iter().map(|&e| e.min(n)).collect();
    let mut entries: Vec<usize> = Vec::new();
    let mut peak_map: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < capped.len() {
        debug_assert!(i % 2 == 0, "runs start and end on peaks");
        if capped[i] == n {
            // maximal run of n's starting at this peak
            let mut j = i;
            while j + 2 < capped.len() && capped[j + 1] == n {
                j += 2;
            }
            entries.push(n);
            let new_peak = entries.len() / 2;
            for _ in (i..=j).step_by(2) {
                peak_map.push(new_peak);
            }
            i = j + 1;
        } else {
            entries.push(capped[i]);
            peak_map.push(entries.len() / 2);
            i += 1;
        }
        if i < capped.len() {
            entries.push(capped[i]);
            i += 1;
        }
    }
    let table = TableOfDimensions::new(entries).expect("truncation preserves validity");
    (table, peak_map)
}

/// The dimension-collapsing cell map `realize(t) → realize(truncate(t, n))`:
/// cells below `n` are preserved, cells at dimension ≥ `n` fall onto the top
/// cell of their (collapsed) component.
fn truncate_cell(
    t: &TableOfDimensions,
    n: usize,
    dim: usize,
    ord: usize,
) -> (usize, usize) {
    let (tt, peak_map) = truncate_table(t, n);
    let r = realize(t);
    let rt = realize(&tt);
    let (comp, (d, o)) = r.rep(dim, ord);
    let comp2 = peak_map[comp];
    let dc2 = if d < n { (d, o) } else { (n, 0) };
    let new_dim = dim.min(n);
    (new_dim, rt.cell_of(comp2, dc2))
}

/// Truncation of a base morphism at level `n`: tables map entrywise by
/// `min(·, n)` with degenerate gluing collapsed, cells by [`truncate_cell`].
pub fn truncate_morphism(m: &Theta0Morphism, n: usize) -> Theta0Morphism {
    let (dom2, _) = truncate_table(&m.dom, n);
    let (cod2, cod_peak_map) = truncate_table(&m.cod, n);
    let r_cod = realize(&m.cod);
    let r_cod2 = realize(&cod2);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for dim2 in 0..=r_cod2.glob.top_dim() {
        let mut col = Vec::with_capacity(r_cod2.glob.count(dim2));
        for ord2 in 0..r_cod2.glob.count(dim2) {
            // canonical preimage of this truncated cell
            let (comp2, (d2, o2)) = r_cod2.rep(dim2, ord2);
            let comp = cod_peak_map
                .iter()
                .position(|&c| c == comp2)
                .expect("peak map is onto");
            let pre = if d2 < n {
                (d2, o2)
            } else {
                // top of the collapsed component: the n-dimensional source
                // face (which is the top cell itself when the peak is n)
                (n, 0)
            };
            let pre_ord = r_cod.cell_of(comp, pre);
            let pre_dim = pre.0;
            let img = m.map.apply(pre_dim, pre_ord);
            let (nd, no) = truncate_cell(&m.dom, n, pre_dim, img);
            debug_assert_eq!(nd, dim2);
            col.push(no);
        }
        cells.push(col);
    }
    let out = Theta0Morphism {
        dom: dom2.clone(),
        cod: cod2,
        map: GlobMap { cells },
    };
    debug_assert!(
        out.map
            .commutes(&realize(&out.cod).glob, &realize(&out.dom).glob),
        "truncated morphism must stay globular"
    );
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn arb_table(max_len: usize, max_entry: usize) -> BoxedStrategy<Vec<usize>> {
        let max_peaks = (max_len + 1) / 2;
        (1..=max_peaks)
            .prop_flat_map(move |k| {
                if k == 1 {
                    proptest::collection::vec(0..=max_entry, 1).boxed()
                } else {
                    proptest::collection::vec(1..=max_entry, k)
                        .prop_flat_map(|peaks| {
                            let valley_ranges: Vec<BoxedStrategy<usize>> = peaks
                                .windows(2)
                                .map(|w| (0..w[0].min(w[1])).boxed())
                                .collect();
                            (Just(peaks), valley_ranges)
                        })
                        .prop_map(|(peaks, valleys)| {
                            let mut entries = Vec::new();
                            for (i, p) in peaks.iter().enumerate() {
                                entries.push(*p);
                                if i < valleys.len() {
                                    entries.push(valleys[i]);
                                }
                            }
                            entries
                        })
                        .boxed()
                }
            })
            .boxed()
    }

    fn t(v: &[usize]) -> TableOfDimensions {
        TableOfDimensions::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_table(&[0]).is_ok());
        assert!(validate_table(&[1, 0, 2, 1, 2]).is_ok());
        assert_eq!(
            validate_table(&[1, 2, 1]),
            Err(TableError::ZigZagViolation(2))
        );
        assert_eq!(validate_table(&[1, 0]), Err(TableError::EvenLength));
        assert_eq!(validate_table(&[]), Err(TableError::Empty));
        assert_eq!(validate_table(&[1, 1, 1]), Err(TableError::ZigZagViolation(2)));
    }

    #[test]
    fn heights() {
        assert_eq!(t(&[0]).height(), 0);
        assert_eq!(t(&[1, 0, 2, 1, 2]).height(), 2);
        assert_eq!(t(&[3, 0, 1]).height(), 3);
    }

    #[test]
    fn height_matches_realization_top() {
        for table in enumerate_tables(&Budget::default().with_table_len(5).with_max_entry(2), None)
        {
            let r = realize(&table);
            assert_eq!(table.height(), r.glob.top_dim());
            assert!(r.glob.count(table.height()) > 0);
        }
    }

    #[test]
    fn hom_set_sizes() {
        let g0 = TableOfDimensions::globe(0);
        let g1 = TableOfDimensions::globe(1);
        assert_eq!(hom_set(&g0, &g0).len(), 1);
        assert_eq!(hom_set(&g1, &g0).len(), 2);
        assert_eq!(hom_set(&t(&[1, 0, 1]), &g0).len(), 3);
    }

    #[test]
    fn globe_hom_sets_biject_with_cells() {
        for table in enumerate_tables(&Budget::default().with_table_len(3).with_max_entry(2), None)
        {
            let r = realize(&table);
            for k in 0..=table.height() {
                let homs = hom_set(&table, &TableOfDimensions::globe(k));
                assert_eq!(homs.len(), r.glob.count(k), "table {table}, globe {k}");
                for ord in 0..r.glob.count(k) {
                    let m = morphism_from_cell(&table, k, ord);
                    assert_eq!(cell_of_morphism(&m), Some((k, ord)));
                    assert!(homs.contains(&m));
                }
            }
        }
    }

    #[test]
    fn unit_laws() {
        let g1 = TableOfDimensions::globe(1);
        let g0 = TableOfDimensions::globe(0);
        for f in hom_set(&g1, &g0).iter() {
            assert_eq!(&compose(&identity(&g0), f).unwrap(), f);
            assert_eq!(&compose(f, &identity(&g1)).unwrap(), f);
        }
    }

    #[test]
    fn composition_mismatch_is_rejected() {
        let g0 = TableOfDimensions::globe(0);
        let g1 = TableOfDimensions::globe(1);
        // the two endpoint morphisms live in (1) -> (0); composing one with
        // itself mismatches (0) against (1)
        let e = &hom_set(&g1, &g0)[0];
        assert!(compose(e, e).is_err());
        assert!(compose(e, &identity(&g1)).is_ok());
        assert!(hom_set(&g0, &g1).is_empty());
    }

    #[test]
    fn limit_decomposition_spot_checks() {
        let tables = [t(&[0]), t(&[1]), t(&[1, 0, 1]), t(&[2, 1, 2]), t(&[2, 0, 1])];
        for m in &tables {
            for n in &tables {
                assert_eq!(
                    hom_set(m, n).len(),
                    constrained_product_count(m, n),
                    "{m} -> {n}"
                );
            }
        }
    }

    #[test]
    fn truncation_collapses_tables() {
        assert_eq!(truncate_table(&t(&[2, 1, 2]), 1).0, t(&[1]));
        assert_eq!(truncate_table(&t(&[2, 1, 2]), 2).0, t(&[2, 1, 2]));
        assert_eq!(truncate_table(&t(&[1, 0, 1]), 1).0, t(&[1, 0, 1]));
        assert_eq!(truncate_table(&t(&[2, 1, 2, 0, 2]), 1).0, t(&[1, 0, 1]));
        assert_eq!(truncate_table(&t(&[2, 0, 2]), 1).0, t(&[1, 0, 1]));
        assert_eq!(truncate_table(&t(&[3, 1, 2]), 2).0, t(&[2, 1, 2]));
    }

    #[test]
    fn truncated_morphisms_compose() {
        // truncation is functorial on a sample of composable pairs
        let dom = t(&[2, 1, 2]);
        let mid = t(&[2]);
        let g1 = TableOfDimensions::globe(1);
        for f in hom_set(&dom, &mid).iter() {
            for g in hom_set(&mid, &g1).iter() {
                let gf = compose(g, f).unwrap();
                let lhs = truncate_morphism(&gf, 1);
                let rhs = compose(&truncate_morphism(g, 1), &truncate_morphism(f, 1)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn compose_is_associative(
            a in arb_table(3, 2),
            b in arb_table(3, 2),
        ) {
            let ta = t(&a);
            let tb = t(&b);
            let g0 = TableOfDimensions::globe(0);
            // triples ta -> tb -> (0) and identities around them
            for f in hom_set(&ta, &tb).iter().take(4) {
                for g in hom_set(&tb, &g0).iter().take(4) {
                    let left = compose(&compose(g, f).unwrap(), &identity(&ta)).unwrap();
                    let right = compose(g, &compose(f, &identity(&ta)).unwrap()).unwrap();
                    prop_assert_eq!(left, right);
                }
            }
        }

        #[test]
        fn limit_decomposition_holds(
            a in arb_table(3, 2),
            b in arb_table(5, 2),
        ) {
            let m = t(&a);
            let n = t(&b);
            prop_assert_eq!(hom_set(&m, &n).len(), constrained_product_count(&m, &n));
        }
    }
}
