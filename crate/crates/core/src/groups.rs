//! Finite subgroups of `PGL_n` given by cyclotomic matrices.
//!
//! Every [`ProjElement`] carries a canonical representative (first nonzero
//! entry in row-major order equal to 1), which makes projective equality a
//! data comparison, and an exact matrix lift. Lifts of group elements are
//! products of the input generator lifts, so their powers stay inside a finite
//! linear group and scalar multiples stay roots of unity.
//!
//! A [`ProjGroup`] stores its elements in canonical sorted order together with
//! a multiplication table; subgroup algorithms work on index sets.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{lcm, CycNum};
use crate::linalg::{LinalgError, Matrix};

/// Default closure cap, the order of `W(E_6)`.
pub const DEFAULT_CAP: usize = 51840;

// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generator is singular or not square")]
    SingularGenerator,
    #[error("generators act on spaces of different dimension")]
    DimensionMismatch,
    #[error("group is not projectively abelian")]
    NotAbelian,
    #[error("unsupported isomorphism tag {0}")]
    UnsupportedTag(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn canonicalize(m: &Matrix) -> Matrix {
    let lead = m
        .entries()
        .iter()
        .find(|e| !e.is_zero())
        .expect("invertible matrix has a nonzero entry");
    if lead.is_one() {
        return m.clone();
    }
    m.scale(&lead.inverse().expect("nonzero")).expect("same field")
}

/// An element of `PGL_n` with its chosen matrix lift.
#[derive(Clone, Debug)]
pub struct ProjElement {
    canonical: Matrix,
    lift: Matrix,
}

impl ProjElement {
    /// Wrap an invertible square matrix; the matrix itself becomes the lift.
    pub fn new(m: Matrix) -> Result<Self, GroupError> {
        if !m.is_square() || m.rank() != m.rows() {
            return Err(GroupError::SingularGenerator);
        }
        Ok(Self::from_lift(m))
    }

    fn from_lift(lift: Matrix) -> Self {
        Self {
            canonical: canonicalize(&lift),
            lift,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_lift(Matrix::identity(n, 1))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, GroupError> {
        Self::new(Matrix::from_ints(rows))
    }

    pub fn diagonal(entries: Vec<CycNum>) -> Result<Self, GroupError> {
        Self::new(Matrix::diagonal(entries)?)
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}` (0-based).
    pub fn permutation(perm: &[usize]) -> Result<Self, GroupError> {
        let n = perm.len();
        let mut rows = vec![vec![CycNum::from_int(0); n]; n];
        for (j, &i) in perm.iter().enumerate() {
            if i >= n {
                return Err(GroupError::DimensionMismatch);
            }
            rows[i][j] = CycNum::from_int(1);
        }
        Self::new(Matrix::from_rows(rows)?)
    }

    /// Canonical representative (first nonzero row-major entry equal to 1).
    pub fn matrix(&self) -> &Matrix {
        &self.canonical
    }

    pub fn lift(&self) -> &Matrix {
        &self.lift
    }

    pub fn n(&self) -> usize {
        self.canonical.rows()
    }

    pub fn order_of_field(&self) -> u32 {
        self.lift.order()
    }

    pub fn promote(&self, order: u32) -> Result<Self, GroupError> {
        Ok(Self {
            canonical: self.canonical.promote(order)?,
            lift: self.lift.promote(order)?,
        })
    }

    pub fn compose(&self, other: &ProjElement) -> ProjElement {
        Self::from_lift(&self.lift * &other.lift)
    }

    pub fn inverse(&self) -> ProjElement {
        Self::from_lift(self.lift.inverse().expect("invertible lift"))
    }

    pub fn pow(&self, k: i64) -> ProjElement {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Matrix::identity(self.n(), self.lift.order());
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base.lift;
        }
        Self::from_lift(acc)
    }

    pub fn conjugate_by(&self, h: &ProjElement) -> ProjElement {
        let hinv = h.lift.inverse().expect("invertible lift");
        Self::from_lift(&(&h.lift * &self.lift) * &hinv)
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.is_scalar()
    }

    /// Projective commutation: the commutator is a scalar matrix.
    pub fn commutes_with(&self, other: &ProjElement) -> bool {
        self.compose(other) == other.compose(self)
    }
}

impl PartialEq for ProjElement {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for ProjElement {}

impl fmt::Display for ProjElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical)
    }
}

/// Least `m >= 1` with `lift^m` scalar, together with that scalar.
pub fn projective_order(g: &ProjElement, cap: usize) -> Result<(usize, CycNum), GroupError> {
    let mut acc = g.lift.clone();
    for m in 1..=cap {
        if let Some(gamma) = acc.scalar_value() {
            return Ok((m, gamma));
        }
        acc = &acc * &g.lift;
    }
    Err(GroupError::CapExceeded(cap))
}

enum Mult {
    Table(Vec<u32>),
    // right[x][k] = x * gen_k; word[y] = (parent, k) with y = parent * gen_k.
    Cayley {
        right: Vec<Vec<u32>>,
        word: Vec<Option<(u32, u32)>>,
        bfs: Vec<u32>,
    },
}

/// A finite subgroup of `PGL_n` with canonically sorted elements.
pub struct ProjGroup {
    n: usize,
    elements: Vec<ProjElement>,
    generators: Vec<usize>,
    identity: usize,
    lookup: HashMap<u64, Vec<u32>>,
    mult: Mult,
    inverses: Vec<u32>,
}

impl fmt::Debug for ProjGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjGroup")
            .field("n", &self.n)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

fn build_lookup(elements: &[ProjElement]) -> HashMap<u64, Vec<u32>> {
    let mut lookup: HashMap<u64, Vec<u32>> = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        lookup.entry(e.canonical.hash_key()).or_default().push(i as u32);
    }
    lookup
}

/// Close a generator list under multiplication.
pub fn generate(gens: &[ProjElement], cap: usize) -> Result<ProjGroup, GroupError> {
    let n = match gens.first() {
        Some(g) => g.n(),
        None => return Ok(ProjGroup::trivial(1)),
    };
    generate_in(n, gens, cap)
}

/// Like [`generate`] but with an explicit ambient size, so the empty list gives the trivial group of `PGL_n`.
pub fn generate_in(n: usize, gens: &[ProjElement], cap: usize) -> Result<ProjGroup, GroupError> {
    if gens.iter().any(|g| g.n() != n) {
        return Err(GroupError::DimensionMismatch);
    }
    for g in gens {
        if !g.lift.is_square() || g.lift.rank() != n {
            return Err(GroupError::SingularGenerator);
        }
    }
    let order = gens.iter().fold(1, |acc, g| lcm(acc, g.order_of_field()));
    let mut gen_list: Vec<ProjElement> = Vec::new();
    for g in gens {
        let g = g.promote(order)?;
        if !g.is_identity() && !gen_list.contains(&g) {
            gen_list.push(g);
        }
    }
    let ident = ProjElement::identity(n).promote(order)?;
    let mut elements = vec![ident];
    let mut lookup: HashMap<u64, Vec<u32>> = HashMap::new();
    lookup.insert(elements[0].canonical.hash_key(), vec![0]);
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut word: Vec<Option<(u32, u32)>> = vec![None];
    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(gen_list.len());
        for (k, s) in gen_list.iter().enumerate() {
            let y = elements[head].compose(s);
            let key = y.canonical.hash_key();
            let found = lookup
                .get(&key)
                .and_then(|c| c.iter().copied().find(|&i| elements[i as usize] == y));
            let idx = match found {
                Some(i) => i,
                None => {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    let i = elements.len() as u32;
                    lookup.entry(key).or_default().push(i);
                    elements.push(y);
                    word.push(Some((head as u32, k as u32)));
                    i
                }
            };
            row.push(idx);
        }
        right.push(row);
        head += 1;
    }
    // Canonical ordering of elements, independent of generator order.
    let mut perm: Vec<usize> = (0..elements.len()).collect();
    perm.sort_by(|&a, &b| elements[a].canonical.canonical_cmp(&elements[b].canonical));
    let mut new_index = vec![0u32; elements.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new as u32;
    }
    let bfs: Vec<u32> = (0..elements.len()).map(|old| new_index[old]).collect();
    let mut sorted_right = vec![Vec::new(); elements.len()];
    let mut sorted_word = vec![None; elements.len()];
    for old in 0..elements.len() {
        let new = new_index[old] as usize;
        sorted_right[new] = right[old].iter().map(|&i| new_index[i as usize]).collect();
        sorted_word[new] = word[old].map(|(p, k)| (new_index[p as usize], k));
    }
    let mut slots: Vec<Option<ProjElement>> = elements.into_iter().map(Some).collect();
    let elements: Vec<ProjElement> = perm.iter().map(|&old| slots[old].take().unwrap()).collect();
    let generators: Vec<usize> = gen_list
        .iter()
        .map(|g| elements.iter().position(|e| e == g).unwrap())
        .collect();
    let identity = new_index[0] as usize;
    let mult = Mult::Cayley {
        right: sorted_right,
        word: sorted_word,
        bfs,
    };
    let mut group = ProjGroup {
        n,
        lookup: build_lookup(&elements),
        elements,
        generators,
        identity,
        mult,
        inverses: vec![],
    };
    group.finish_tables();
    Ok(group)
}

/// Closure of a set of matrices under multiplication in `GL_n` (not projectivized).
pub fn linear_closure(gens: &[Matrix], cap: usize) -> Result<Vec<Matrix>, GroupError> {
    let Some(first) = gens.first() else {
        return Ok(vec![]);
    };
    let n = first.rows();
    let order = gens.iter().fold(1, |acc, g| lcm(acc, g.order()));
    let gens: Vec<Matrix> = gens.iter().map(|g| g.promote(order)).collect::<Result<_, _>>()?;
    let mut out = vec![Matrix::identity(n, order)];
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    seen.insert(out[0].hash_key(), vec![0]);
    let mut head = 0;
    while head < out.len() {
        for s in &gens {
            let y = &out[head] * s;
            let key = y.hash_key();
            let known = seen.get(&key).is_some_and(|c| c.iter().any(|&i| out[i] == y));
            if !known {
                if out.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                seen.entry(key).or_default().push(out.len());
                out.push(y);
            }
        }
        head += 1;
    }
    Ok(out)
}

impl ProjGroup {
    pub fn trivial(n: usize) -> ProjGroup {
        let elements = vec![ProjElement::identity(n)];
        let mut g = ProjGroup {
            n,
            lookup: build_lookup(&elements),
            elements,
            generators: vec![],
            identity: 0,
            mult: Mult::Table(vec![0]),
            inverses: vec![],
        };
        g.finish_tables();
        g
    }

    fn finish_tables(&mut self) {
        let size = self.elements.len();
        if size <= TABLE_LIMIT {
            if let Mult::Cayley { right, word, bfs } = &self.mult {
                let mut table = vec![0u32; size * size];
                for x in 0..size {
                    for &y in bfs {
                        let y = y as usize;
                        table[x * size + y] = match word[y] {
                            None => x as u32,
                            Some((p, k)) => right[table[x * size + p as usize] as usize][k as usize],
                        };
                    }
                }
                self.mult = Mult::Table(table);
            }
        }
        self.inverses = (0..size)
            .map(|x| {
                let mut y = x;
                let mut prev = self.identity;
                while y != self.identity {
                    prev = y;
                    y = self.mul(y, x);
                }
                if x == self.identity {
                    self.identity as u32
                } else {
                    prev as u32
                }
            })
            .collect();
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ProjElement {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn generators(&self) -> Vec<ProjElement> {
        self.generators.iter().map(|&i| self.elements[i].clone()).collect()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, g: &ProjElement) -> Option<usize> {
        let order = self.elements[0].order_of_field();
        let g = if g.order_of_field() == order {
            std::borrow::Cow::Borrowed(g)
        } else {
            std::borrow::Cow::Owned(g.promote(lcm(order, g.order_of_field())).ok()?)
        };
        if g.order_of_field() != order {
            // Entries outside the group's field cannot match.
            return self.elements.iter().position(|e| e == g.as_ref());
        }
        self.lookup
            .get(&g.canonical.hash_key())?
            .iter()
            .map(|&i| i as usize)
            .find(|&i| self.elements[i] == *g)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mult {
            Mult::Table(t) => t[a * self.elements.len() + b] as usize,
            Mult::Cayley { right, word, .. } => {
                let mut path = Vec::new();
                let mut y = b;
                while let Some((p, k)) = word[y] {
                    path.push(k);
                    y = p as usize;
                }
                let mut x = a;
                for &k in path.iter().rev() {
                    x = right[x][k as usize] as usize;
                }
                x
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Order of an element in the group.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut y = a;
        while y != self.identity {
            y = self.mul(y, a);
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, &a)| self.generators[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// Sorted index set of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A small generating set of the subgroup with the given (sorted) elements.
    pub fn generating_set(&self, set: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = vec![self.identity];
        for &x in set {
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = self.closure(&gens);
                if current.len() == set.len() {
                    break;
                }
            }
        }
        gens
    }

    /// Materialize a subgroup given by a sorted index set.
    pub fn subgroup(&self, set: &[usize]) -> ProjGroup {
        let elements: Vec<ProjElement> = set.iter().map(|&i| self.elements[i].clone()).collect();
        let pos: HashMap<usize, u32> = set.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let size = set.len();
        let mut table = vec![0u32; size * size];
        for (i, &a) in set.iter().enumerate() {
            for (j, &b) in set.iter().enumerate() {
                table[i * size + j] = pos[&self.mul(a, b)];
            }
        }
        let generators = self.generating_set(set).iter().map(|g| pos[g] as usize).collect();
        let mut g = ProjGroup {
            n: self.n,
            lookup: build_lookup(&elements),
            elements,
            generators,
            identity: pos[&self.identity] as usize,
            mult: Mult::Table(table),
            inverses: vec![],
        };
        g.finish_tables();
        g
    }

    /// Indices of this group's elements inside `parent`, sorted.
    pub fn indices_in(&self, parent: &ProjGroup) -> Option<Vec<usize>> {
        let mut out = self
            .elements
            .iter()
            .map(|e| parent.index_of(e))
            .collect::<Option<Vec<_>>>()?;
        out.sort_unstable();
        Some(out)
    }

    /// Elements commuting with every element of `gens`.
    pub fn centralizer(&self, gens: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| gens.iter().all(|&g| self.commute(x, g)))
            .collect()
    }

    /// Canonical key of the conjugacy class of a subgroup: the least conjugate.
    pub fn conjugacy_key(&self, set: &[usize]) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        let mut buf = Vec::with_capacity(set.len());
        for g in 0..self.order() {
            buf.clear();
            buf.extend(set.iter().map(|&x| self.conj(g, x)));
            buf.sort_unstable();
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        best.unwrap_or_default()
    }

    /// Conjugate every element by `h`.
    pub fn conjugate(&self, h: &ProjElement) -> Result<ProjGroup, GroupError> {
        if h.n() != self.n {
            return Err(GroupError::DimensionMismatch);
        }
        if h.lift.rank() != self.n {
            return Err(GroupError::SingularGenerator);
        }
        let images: Vec<ProjElement> = self.elements.iter().map(|e| e.conjugate_by(h)).collect();
        let mut perm: Vec<usize> = (0..images.len()).collect();
        perm.sort_by(|&a, &b| images[a].canonical.canonical_cmp(&images[b].canonical));
        let mut new_index = vec![0u32; images.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new as u32;
        }
        let size = images.len();
        let mut table = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                table[new_index[a] as usize * size + new_index[b] as usize] = new_index[self.mul(a, b)];
            }
        }
        let mut slots: Vec<Option<ProjElement>> = images.into_iter().map(Some).collect();
        let elements: Vec<ProjElement> = perm.iter().map(|&old| slots[old].take().unwrap()).collect();
        let mut g = ProjGroup {
            n: self.n,
            lookup: build_lookup(&elements),
            elements,
            generators: self.generators.iter().map(|&i| new_index[i] as usize).collect(),
            identity: new_index[self.identity] as usize,
            mult: Mult::Table(table),
            inverses: vec![],
        };
        g.finish_tables();
        Ok(g)
    }

    /// Isomorphism-type tag.
    pub fn tag(&self) -> GroupTag {
        if !self.is_abelian() {
            return GroupTag::Nonabelian(self.order() as u64);
        }
        let orders: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        GroupTag::from_abelian_orders(&orders)
    }
}

/// Isomorphism type of a finite group, exact for abelian groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupTag {
    Cyclic { order: u64 },
    ElementaryAbelian { p: u64, rank: u32 },
    Abelian { invariant_factors: Vec<u64> },
    Nonabelian { order: u64 },
}

#[allow(non_snake_case)]
impl GroupTag {
    pub fn Cyclic(order: u64) -> Self {
        GroupTag::Cyclic { order }
    }

    pub fn ElementaryAbelian(p: u64, rank: u32) -> Self {
        GroupTag::ElementaryAbelian { p, rank }
    }

    pub fn Nonabelian(order: u64) -> Self {
        GroupTag::Nonabelian { order }
    }
}

impl GroupTag {
    /// Tag of an abelian group from the multiset of its element orders.
    pub fn from_abelian_orders(orders: &[usize]) -> GroupTag {
        let size = orders.len() as u64;
        if size == 1 {
            return GroupTag::Cyclic { order: 1 };
        }
        // p-primary parts: partition conjugate to the jumps in #{x : x^(p^k) = 1}.
        let mut factor_lists: Vec<Vec<u64>> = Vec::new();
        for p in prime_factors(size) {
            let mut counts = vec![1u64];
            let mut k = 1u32;
            loop {
                let pk = p.pow(k) as usize;
                let c = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
                counts.push(c);
                if c == *counts.iter().rev().nth(1).unwrap() && k > 1 || pk as u64 > size {
                    break;
                }
                k += 1;
            }
            let logs: Vec<u32> = counts.iter().map(|&c| ilog(c, p)).collect();
            let parts_ge: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).filter(|&d| d > 0).collect();
            // parts_ge[k-1] = number of cyclic factors of order >= p^k.
            let rank = parts_ge.first().copied().unwrap_or(0) as usize;
            let mut exps = vec![0u32; rank];
            for (k, &cnt) in parts_ge.iter().enumerate() {
                for e in exps.iter_mut().take(cnt as usize) {
                    *e = k as u32 + 1;
                }
            }
            factor_lists.push(exps.iter().map(|&e| p.pow(e)).collect());
        }
        let width = factor_lists.iter().map(Vec::len).max().unwrap_or(0);
        let mut invariant: Vec<u64> = vec![1; width];
        for list in &factor_lists {
            // list is descending; align the largest powers with the last factor.
            for (i, &f) in list.iter().enumerate() {
                invariant[width - 1 - i] *= f;
            }
        }
        if invariant.len() == 1 {
            return GroupTag::Cyclic { order: invariant[0] };
        }
        let first = invariant[0];
        if invariant.iter().all(|&d| d == first) && is_prime(first) {
            return GroupTag::ElementaryAbelian {
                p: first,
                rank: invariant.len() as u32,
            };
        }
        GroupTag::Abelian {
            invariant_factors: invariant,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Cyclic { order } => write!(f, "C{order}"),
            GroupTag::ElementaryAbelian { p, rank } => write!(f, "C{p}^{rank}"),
            GroupTag::Abelian { invariant_factors } => {
                let parts: Vec<String> = invariant_factors.iter().map(|d| format!("C{d}")).collect();
                write!(f, "{}", parts.join(" x "))
            }
            GroupTag::Nonabelian { order } => write!(f, "nonabelian of order {order}"),
        }
    }
}

fn ilog(mut c: u64, p: u64) -> u32 {
    let mut k = 0;
    while c > 1 {
        c /= p;
        k += 1;
    }
    k
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True iff every pair of generators commutes projectively.
pub fn is_projectively_abelian(gens: &[ProjElement]) -> bool {
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
}

fn subgroup_key(set: &[usize]) -> Vec<usize> {
    set.to_vec()
}

/// All abelian subgroups of `g` up to conjugacy, as `(elements, generators)` pairs.
fn abelian_classes(g: &ProjGroup) -> Vec<(Vec<usize>, Vec<usize>, bool)> {
    let mut classes: Vec<(Vec<usize>, Vec<usize>, bool)> = Vec::new();
    let mut seen_keys: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut push = |set: Vec<usize>,
                    gens: Vec<usize>,
                    classes: &mut Vec<(Vec<usize>, Vec<usize>, bool)>,
                    queue: &mut VecDeque<usize>| {
        let key = g.conjugacy_key(&set);
        if seen_keys.insert(key) {
            classes.push((set, gens, false));
            queue.push_back(classes.len() - 1);
        }
    };
    let mut cyclic_seen: HashSet<Vec<usize>> = HashSet::new();
    for x in 0..g.order() {
        let set = g.closure(&[x]);
        if cyclic_seen.insert(subgroup_key(&set)) {
            let gens = if x == g.identity { vec![] } else { vec![x] };
            push(set, gens, &mut classes, &mut queue);
        }
    }
    while let Some(ci) = queue.pop_front() {
        let (set, gens, _) = classes[ci].clone();
        let cent = g.centralizer(&gens);
        if cent.len() == set.len() {
            classes[ci].2 = true;
            continue;
        }
        let mut local: HashSet<Vec<usize>> = HashSet::new();
        for &x in &cent {
            if set.binary_search(&x).is_ok() {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let new_set = g.closure(&new_gens);
            if local.insert(new_set.clone()) {
                push(new_set, new_gens, &mut classes, &mut queue);
            }
        }
    }
    classes
}

/// Maximal projectively abelian subgroups up to conjugacy, as sorted index sets.
///
/// Each returned set is the least member of its conjugacy class; the list is
/// sorted by order and then lexicographically.
pub fn maximal_abelian_subgroup_sets(g: &ProjGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = abelian_classes(g)
        .into_iter()
        .filter(|(_, _, maximal)| *maximal)
        .map(|(set, _, _)| g.conjugacy_key(&set))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

pub fn maximal_abelian_subgroups(g: &ProjGroup) -> Vec<ProjGroup> {
    maximal_abelian_subgroup_sets(g)
        .iter()
        .map(|s| g.subgroup(s))
        .collect()
}

/// All subgroups with the given tag, as sorted index sets in lexicographic order.
pub fn subgroup_sets_isomorphic_to(g: &ProjGroup, tag: &GroupTag) -> Result<Vec<Vec<usize>>, GroupError> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    match *tag {
        GroupTag::Cyclic { order } => {
            for x in 0..g.order() {
                if g.element_order(x) as u64 == order {
                    found.insert(g.closure(&[x]));
                }
            }
        }
        GroupTag::ElementaryAbelian { p, rank } => {
            let p_elems: Vec<usize> = (0..g.order())
                .filter(|&x| g.element_order(x) as u64 == p)
                .collect();
            let mut level: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
            level.insert((vec![g.identity], vec![]));
            for _ in 0..rank {
                let mut next_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
                let mut next = BTreeSet::new();
                for (set, gens) in &level {
                    for &x in &p_elems {
                        if set.binary_search(&x).is_ok() || !gens.iter().all(|&h| g.commute(x, h)) {
                            continue;
                        }
                        let mut ng = gens.clone();
                        ng.push(x);
                        let ns = g.closure(&ng);
                        if next_sets.insert(ns.clone()) {
                            next.insert((ns, ng));
                        }
                    }
                }
                level = next;
            }
            found.extend(level.into_iter().map(|(s, _)| s));
        }
        ref other => return Err(GroupError::UnsupportedTag(other.to_string())),
    }
    if g.order() == 1 {
        found.clear();
    }
    Ok(found.into_iter().collect())
}

pub fn subgroups_isomorphic_to(g: &ProjGroup, tag: &GroupTag) -> Result<Vec<ProjGroup>, GroupError> {
    Ok(subgroup_sets_isomorphic_to(g, tag)?
        .iter()
        .map(|s| g.subgroup(s))
        .collect())
}

/// Index set of one Sylow `p`-subgroup, built deterministically from the smallest suitable elements.
pub fn sylow_subgroup_set(g: &ProjGroup, p: u64) -> Vec<usize> {
    let mut target = 1usize;
    let mut m = g.order();
    while m.is_multiple_of(p as usize) {
        m /= p as usize;
        target *= p as usize;
    }
    let mut set = vec![g.identity];
    let mut gens: Vec<usize> = Vec::new();
    while set.len() < target {
        let next = (0..g.order()).find(|&x| {
            set.binary_search(&x).is_err()
                && set.binary_search(&g.power(x, p as usize)).is_ok()
                && gens.iter().all(|&h| set.binary_search(&g.conj(x, h)).is_ok())
        });
        let Some(x) = next else { break };
        gens.push(x);
        set = g.closure(&gens);
    }
    set
}

pub fn sylow_subgroup(g: &ProjGroup, p: u64) -> ProjGroup {
    g.subgroup(&sylow_subgroup_set(g, p))
}

pub fn conjugate(g: &ProjGroup, h: &ProjElement) -> Result<ProjGroup, GroupError> {
    g.conjugate(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::zeta;

    fn eps() -> CycNum {
        zeta(3, 1)
    }

    fn diag(v: &[CycNum]) -> ProjElement {
        ProjElement::diagonal(v.to_vec()).unwrap()
    }

    fn one() -> CycNum {
        CycNum::from_int(1)
    }

    fn obstruction_b() -> Vec<ProjElement> {
        vec![
            ProjElement::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).unwrap(),
            diag(&[one(), eps(), eps().pow(2).unwrap()]),
        ]
    }

    fn s5_perms() -> Vec<ProjElement> {
        vec![
            ProjElement::permutation(&[1, 0, 2, 3, 4]).unwrap(),
            ProjElement::permutation(&[1, 2, 3, 4, 0]).unwrap(),
        ]
    }

    #[test]
    fn generate_examples() {
        assert_eq!(generate(&obstruction_b(), DEFAULT_CAP).unwrap().order(), 9);
        assert_eq!(generate(&[ProjElement::identity(3)], DEFAULT_CAP).unwrap().order(), 1);
        assert_eq!(generate(&s5_perms(), DEFAULT_CAP).unwrap().order(), 120);
        let big = ProjElement::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(generate(&[big], 50).unwrap_err(), GroupError::CapExceeded(50));
        assert_eq!(
            ProjElement::from_ints(&[&[1, 1], &[1, 1]]).unwrap_err(),
            GroupError::SingularGenerator
        );
    }

    #[test]
    fn generation_ignores_order_and_duplicates() {
        let mut gens = s5_perms();
        let a = generate(&gens, DEFAULT_CAP).unwrap();
        gens.reverse();
        gens.push(gens[0].clone());
        let b = generate(&gens, DEFAULT_CAP).unwrap();
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn projective_order_examples() {
        let g = diag(&[one(), one(), one(), CycNum::from_int(-1)]);
        let (m, gamma) = projective_order(&g, 100).unwrap();
        assert_eq!(m, 2);
        assert!(gamma.is_one());
        let c = ProjElement::permutation(&[1, 2, 3, 0]).unwrap();
        let (m, gamma) = projective_order(&c, 100).unwrap();
        assert_eq!((m, gamma.is_one()), (4, true));
        let z9 = |k| zeta(9, k);
        // D(z, z^4, z^7) = z * D(1, z^3, z^6): order 3 with cube z^3 I.
        let g = diag(&[z9(1), z9(4), z9(7)]);
        let (m, gamma) = projective_order(&g, 100).unwrap();
        assert_eq!(m, 3);
        assert_eq!(gamma, zeta(3, 1));
        let (m9, _) = projective_order(&diag(&[one(), z9(1), z9(2)]), 100).unwrap();
        assert_eq!(m9, 9);
    }

    #[test]
    fn abelian_checks() {
        assert!(is_projectively_abelian(&obstruction_b()));
        assert!(!obstruction_b()[0].lift().try_mul(obstruction_b()[1].lift()).unwrap().eq(
            &obstruction_b()[1].lift().try_mul(obstruction_b()[0].lift()).unwrap()
        ));
        let g = generate(&obstruction_b(), DEFAULT_CAP).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.tag(), GroupTag::ElementaryAbelian(3, 2));
        let s5 = generate(&s5_perms(), DEFAULT_CAP).unwrap();
        assert_eq!(s5.tag(), GroupTag::Nonabelian(120));
    }

    #[test]
    fn tags_of_abelian_groups() {
        let c6 = vec![1, 2, 3, 3, 6, 6];
        assert_eq!(GroupTag::from_abelian_orders(&c6), GroupTag::Cyclic(6));
        let v4 = vec![1, 2, 2, 2];
        assert_eq!(GroupTag::from_abelian_orders(&v4), GroupTag::ElementaryAbelian(2, 2));
        // C2 x C4
        let c2c4 = vec![1, 2, 2, 2, 4, 4, 4, 4];
        assert_eq!(
            GroupTag::from_abelian_orders(&c2c4),
            GroupTag::Abelian {
                invariant_factors: vec![2, 4]
            }
        );
        // C3 x C6 = C3^2 x C2
        let mut c3c6 = vec![1, 2];
        c3c6.extend(std::iter::repeat_n(3, 8));
        c3c6.extend(std::iter::repeat_n(6, 8));
        assert_eq!(
            GroupTag::from_abelian_orders(&c3c6),
            GroupTag::Abelian {
                invariant_factors: vec![3, 6]
            }
        );
    }

    #[test]
    fn s5_maximal_abelian_subgroups() {
        let s5 = generate(&s5_perms(), DEFAULT_CAP).unwrap();
        let reps = maximal_abelian_subgroups(&s5);
        let mut tags: Vec<String> = reps.iter().map(|a| a.tag().to_string()).collect();
        tags.sort();
        assert_eq!(tags, vec!["C2^2", "C2^2", "C4", "C5", "C6"]);
        assert!(reps.iter().all(|a| a.tag() != GroupTag::ElementaryAbelian(3, 2)));
        assert!(subgroups_isomorphic_to(&s5, &GroupTag::ElementaryAbelian(3, 2)).unwrap().is_empty());
        let syl5 = sylow_subgroup(&s5, 5);
        assert_eq!(syl5.tag(), GroupTag::Cyclic(5));
        assert_eq!(sylow_subgroup(&s5, 2).order(), 8);
        assert_eq!(sylow_subgroup(&s5, 7).order(), 1);
    }

    #[test]
    fn cyclic_and_abelian_groups_are_their_own_maximal_subgroup() {
        let c = generate(&[ProjElement::permutation(&[1, 2, 3, 4, 0]).unwrap()], DEFAULT_CAP).unwrap();
        let reps = maximal_abelian_subgroup_sets(&c);
        assert_eq!(reps, vec![(0..5).collect::<Vec<_>>()]);
        let b = generate(&obstruction_b(), DEFAULT_CAP).unwrap();
        assert_eq!(maximal_abelian_subgroup_sets(&b).len(), 1);
    }

    #[test]
    fn sign_change_group_has_35_klein_subgroups() {
        let mut gens = Vec::new();
        for j in 1..5 {
            let mut d = vec![one(); 5];
            d[0] = CycNum::from_int(-1);
            d[j] = CycNum::from_int(-1);
            gens.push(diag(&d));
        }
        let n = generate(&gens, DEFAULT_CAP).unwrap();
        assert_eq!(n.order(), 16);
        assert_eq!(n.tag(), GroupTag::ElementaryAbelian(2, 4));
        let subs = subgroup_sets_isomorphic_to(&n, &GroupTag::ElementaryAbelian(2, 2)).unwrap();
        assert_eq!(subs.len(), 35);
        let trivial = ProjGroup::trivial(3);
        assert!(subgroup_sets_isomorphic_to(&trivial, &GroupTag::Cyclic(2)).unwrap().is_empty());
    }

    #[test]
    fn conjugation_examples() {
        let g = generate(&[diag(&[one(), CycNum::from_int(-1)])], DEFAULT_CAP).unwrap();
        let same = g.conjugate(&ProjElement::identity(2)).unwrap();
        assert_eq!(same.elements(), g.elements());
        let swap = ProjElement::permutation(&[1, 0]).unwrap();
        let c = g.conjugate(&swap).unwrap();
        assert_eq!(c.elements(), g.elements());
        let h = ProjElement::from_ints(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
        let b = generate(&obstruction_b(), DEFAULT_CAP).unwrap();
        let conj_gens: Vec<ProjElement> = obstruction_b().iter().map(|x| x.conjugate_by(&h)).collect();
        let direct = generate(&conj_gens, DEFAULT_CAP).unwrap();
        let via = b.conjugate(&h).unwrap();
        assert_eq!(direct.elements(), via.elements());
        assert_eq!(via.tag(), b.tag());
    }

    #[test]
    fn multiplication_table_matches_matrices() {
        let s5 = generate(&s5_perms(), DEFAULT_CAP).unwrap();
        for a in (0..120).step_by(7) {
            for b in (0..120).step_by(11) {
                let prod = s5.element(a).compose(s5.element(b));
                assert_eq!(s5.element(s5.mul(a, b)), &prod);
            }
            assert!(s5.element(s5.mul(a, s5.inv(a))).is_identity());
        }
    }
}
