//! Finite groups as multiplication tables: the standard small-order
//! constructors, validation, and exhaustive isomorphism search with
//! invariant pruning.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square")]
    NotSquare,
    #[error("group axiom fails: {0}")]
    AxiomViolation(String),
}

/// A finite group; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinGroup {
    pub name: String,
    /// `mul[a][b]` is `a · b` ("a then b").
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

impl FinGroup {
    pub fn from_table(name: &str, mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mul.len();
        if mul.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotSquare);
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(GroupError::AxiomViolation(format!(
                    "0 is not an identity at {a}"
                )));
            }
            for b in 0..n {
                if mul[a][b] >= n {
                    return Err(GroupError::AxiomViolation("table not closed".into()));
                }
                if mul[a][b] == 0 {
                    inv[a] = b;
                }
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::AxiomViolation(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        if inv.iter().any(|&i| i == usize::MAX) {
            return Err(GroupError::AxiomViolation("missing inverse".into()));
        }
        Ok(FinGroup {
            name: name.to_string(),
            mul,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn trivial() -> Self {
        FinGroup::from_table("C1", vec![vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FinGroup::from_table(&format!("C{n}"), mul).unwrap()
    }

    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Self {
        let n = a.order() * b.order();
        let idx = |x: usize, y: usize| x * b.order() + y;
        let mut mul = vec![vec![0; n]; n];
        for x1 in 0..a.order() {
            for y1 in 0..b.order() {
                for x2 in 0..a.order() {
                    for y2 in 0..b.order() {
                        mul[idx(x1, y1)][idx(x2, y2)] = idx(a.mul[x1][x2], b.mul[y1][y2]);
                    }
                }
            }
        }
        FinGroup::from_table(&format!("{}x{}", a.name, b.name), mul).unwrap()
    }

    /// Dihedral group of order `2n` (symmetries of the `n`-gon), `n ≥ 3`.
    pub fn dihedral(n: usize) -> Self {
        // elements: 0..n rotations, n..2n reflections r^i s
        let sz = 2 * n;
        let mut mul = vec![vec![0; sz]; sz];
        for i in 0..n {
            for j in 0..n {
                mul[i][j] = (i + j) % n; // r^i r^j
                mul[i][n + j] = n + (j + n - i) % n; // r^i (r^j s) = r^{j-i} s
                mul[n + i][j] = n + (i + j) % n; // (r^i s) r^j = r^{i+j} s
                mul[n + i][n + j] = (j + n - i) % n; // (r^i s)(r^j s) = r^{j-i}
            }
        }
        FinGroup::from_table(&format!("D{n}"), mul).unwrap()
    }

    /// Quaternion group of order 8: {±1, ±i, ±j, ±k}.
    pub fn quaternion8() -> Self {
        // encode 1,-1,i,-i,j,-j,k,-k as 0..8 with sign bit = index & 1
        let base = |x: usize| x >> 1;
        let sign = |x: usize| x & 1;
        let pack = |b: usize, s: usize| (b << 1) | s;
        // base multiplication on {1, i, j, k} with carried sign
        let tab: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let mut mul = vec![vec![0; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                let (b, s) = tab[base(x)][base(y)];
                mul[x][y] = pack(b, (s + sign(x) + sign(y)) % 2);
            }
        }
        FinGroup::from_table("Q8", mul).unwrap()
    }

    /// Alternating group A4 (order 12) as even permutations of 4 points.
    pub fn alternating4() -> Self {
        let mut perms: Vec<[usize; 4]> = Vec::new();
        let mut items = [0usize, 1, 2, 3];
        permute(&mut items, 0, &mut perms);
        let mut perms: Vec<[usize; 4]> =
            perms.into_iter().filter(|p| parity(p) == 0).collect();
        perms.sort();
        let compose = |p: &[usize; 4], q: &[usize; 4]| {
            // "p then q"
            let mut r = [0usize; 4];
            for (i, ri) in r.iter_mut().enumerate() {
                *ri = q[p[i]];
            }
            r
        };
        let n = perms.len();
        let mut mul = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let r = compose(&perms[a], &perms[b]);
                mul[a][b] = perms.iter().position(|p| *p == r).unwrap();
            }
        }
        FinGroup::from_table("A4", mul).unwrap()
    }

    /// Dicyclic group of order 12: a of order 6, b with b² = a³, b a b⁻¹ = a⁻¹.
    pub fn dicyclic3() -> Self {
        // elements: a^i (0..6), a^i b (6..12)
        let sz = 12;
        let mut mul = vec![vec![0; sz]; sz];
        for i in 0..6 {
            for j in 0..6 {
                mul[i][j] = (i + j) % 6;
                mul[i][6 + j] = 6 + (i + j) % 6;
                mul[6 + i][j] = 6 + (i + 6 - j) % 6;
                mul[6 + i][6 + j] = (i + 6 - j + 3) % 6;
            }
        }
        FinGroup::from_table("Dic3", mul).unwrap()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    fn order_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort();
        v
    }
}

fn permute(items: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == 4 {
        out.push(*items);
        return;
    }
    for i in k..4 {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn parity(p: &[usize; 4]) -> usize {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// All groups of each order `1..=n` up to isomorphism, for `n ≤ 12`.
pub fn groups_of_order_up_to(n: usize) -> Vec<FinGroup> {
    assert!(n <= 12, "the hand-built catalogue stops at order 12");
    let c = FinGroup::cyclic;
    let mut out: Vec<FinGroup> = Vec::new();
    let candidates: Vec<FinGroup> = vec![
        c(1),
        c(2),
        c(3),
        c(4),
        FinGroup::direct_product(&c(2), &c(2)),
        c(5),
        c(6),
        FinGroup::dihedral(3),
        c(7),
        c(8),
        FinGroup::direct_product(&c(4), &c(2)),
        FinGroup::direct_product(&FinGroup::direct_product(&c(2), &c(2)), &c(2)),
        FinGroup::dihedral(4),
        FinGroup::quaternion8(),
        c(9),
        FinGroup::direct_product(&c(3), &c(3)),
        c(10),
        FinGroup::dihedral(5),
        c(11),
        c(12),
        FinGroup::direct_product(&c(6), &c(2)),
        FinGroup::dihedral(6),
        FinGroup::alternating4(),
        FinGroup::dicyclic3(),
    ];
    for g in candidates {
        if g.order() <= n {
            out.push(g);
        }
    }
    out
}

/// Exhaustive isomorphism search with generator pruning; complete for
/// orders ≤ 64. Returns the element mapping when the groups are isomorphic.
pub fn group_iso(g: &FinGroup, h: &FinGroup) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() || g.order_multiset() != h.order_multiset() {
        return None;
    }
    if n == 1 {
        return Some(vec![0]);
    }
    // greedy generating sequence for g
    let mut gens: Vec<usize> = Vec::new();
    let mut span = closure(g, &gens);
    while span.len() < n {
        let next = (0..n).find(|a| !span.contains(a)).unwrap();
        gens.push(next);
        span = closure(g, &gens);
    }
    let mut images = vec![usize::MAX; gens.len()];
    assign(g, h, &gens, &mut images, 0)
}

fn closure(g: &FinGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &a in gens {
            let y = g.mul[x][a];
            if !seen[y] {
                seen[y] = true;
                frontier.push(y);
            }
        }
    }
    (0..g.order()).filter(|&i| seen[i]).collect()
}

fn assign(
    g: &FinGroup,
    h: &FinGroup,
    gens: &[usize],
    images: &mut Vec<usize>,
    pos: usize,
) -> Option<Vec<usize>> {
    if pos == gens.len() {
        return extend_hom(g, h, gens, images);
    }
    let want = g.element_order(gens[pos]);
    for cand in 0..h.order() {
        if h.element_order(cand) != want {
            continue;
        }
        images[pos] = cand;
        if let Some(iso) = assign(g, h, gens, images, pos + 1) {
            return Some(iso);
        }
    }
    images[pos] = usize::MAX;
    None
}

/// Extends generator images to a homomorphism by closure over products;
/// checks bijectivity and the homomorphism law on the full table.
fn extend_hom(
    g: &FinGroup,
    h: &FinGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (i, &a) in gens.iter().enumerate() {
            let y = g.mul[x][a];
            let hy = h.mul[map[x]][images[i]];
            if map[y] == usize::MAX {
                map[y] = hy;
                frontier.push(y);
            } else if map[y] != hy {
                return None;
            }
        }
    }
    let mut seen = vec![false; n];
    for &v in &map {
        if v == usize::MAX || seen[v] {
            return None;
        }
        seen[v] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul[a][b]] != h.mul[map[a]][map[b]] {
                return None;
            }
        }
    }
    Some(map)
}
