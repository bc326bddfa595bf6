//! Finite abelian groups given by generators and a black-box composition.
//!
//! [`AbGroup::generated_by`] enumerates the group breadth-first from a list of
//! generators, records every coincidence as a relation, and reads the
//! elementary divisors off the Smith normal form of the relation lattice. The
//! same transforms give a basis aligned with the divisors and a discrete-log
//! table mapping each element to its coordinates.

use std::collections::{HashMap, HashSet};
use std::collections::VecDeque;
use std::hash::Hash;

/// Largest order for which a discrete-log table is kept.
pub const DLOG_LIMIT: u64 = 1_000_000;

/// A relation lattice `L` with `modulus * Z^k` contained in `L`, kept in
/// upper-triangular (Hermite) form.
#[derive(Debug, Clone)]
struct RelationLattice {
    modulus: i128,
    rows: Vec<Vec<i128>>,
}

impl RelationLattice {
    fn new(k: usize, modulus: u64) -> Self {
        let modulus = modulus as i128;
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0; k];
                r[i] = modulus;
                r
            })
            .collect();
        RelationLattice { modulus, rows }
    }

    fn reduce(&self, v: &mut [i128], from: usize) {
        for x in v.iter_mut().skip(from) {
            *x = x.rem_euclid(self.modulus);
        }
    }

    fn insert(&mut self, mut r: Vec<i128>) {
        let k = r.len();
        self.reduce(&mut r, 0);
        for i in 0..k {
            if r[i] == 0 {
                continue;
            }
            let pivot = self.rows[i][i];
            if r[i] % pivot == 0 {
                let q = r[i] / pivot;
                for j in i..k {
                    r[j] -= q * self.rows[i][j];
                }
                self.reduce(&mut r, i + 1);
                continue;
            }
            let (g, x, y) = xgcd(pivot, r[i]);
            let (a, b) = (pivot / g, r[i] / g);
            let mut new_pivot = vec![0i128; k];
            let mut rest = vec![0i128; k];
            for j in i..k {
                new_pivot[j] = x * self.rows[i][j] + y * r[j];
                rest[j] = b * self.rows[i][j] - a * r[j];
            }
            self.reduce(&mut new_pivot, i + 1);
            self.reduce(&mut rest, i + 1);
            new_pivot[i] = g;
            self.rows[i] = new_pivot;
            r = rest;
        }
    }

    fn determinant(&self) -> i128 {
        (0..self.rows.len()).map(|i| self.rows[i][i]).product()
    }
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

struct Snf {
    diag: Vec<u64>,
    // column transform V and its inverse, both reduced mod the group order
    v: Vec<Vec<i128>>,
    vinv: Vec<Vec<i128>>,
}

fn smith(mut d: Vec<Vec<i128>>, modulus: i128) -> Snf {
    let k = d.len();
    let mut v: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut vinv = v.clone();
    let m = modulus.max(1);

    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..k {
                for j in t..k {
                    if d[i][j] != 0
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            if pj != t {
                for row in d.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                vinv.swap(t, pj);
            }
            let p = d[t][t];
            let mut dirty = false;
            for i in t + 1..k {
                let q = d[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..k {
                        d[i][j] -= q * d[t][j];
                    }
                }
                dirty |= d[i][t] != 0;
            }
            for j in t + 1..k {
                let q = d[t][j].div_euclid(p);
                if q != 0 {
                    for row in d.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] = (row[j] - q * row[t]).rem_euclid(m);
                    }
                    for c in 0..k {
                        vinv[t][c] = (vinv[t][c] + q * vinv[j][c]).rem_euclid(m);
                    }
                }
                dirty |= d[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..k).find(|&i| (t + 1..k).any(|j| d[i][j] % p != 0));
            match offender {
                Some(i) => {
                    for j in t..k {
                        d[t][j] += d[i][j];
                    }
                }
                None => break,
            }
        }
    }
    let diag = (0..k).map(|i| d[i][i].unsigned_abs() as u64).collect();
    Snf { diag, v, vinv }
}

/// Elementary divisors (all `>= 2`, each dividing the next) of `Z^k / L`
/// where `L` is spanned by `relations` and contains `modulus * Z^k`.
pub fn invariants_of_relations(k: usize, modulus: u64, relations: &[Vec<i64>]) -> Vec<u64> {
    let mut lattice = RelationLattice::new(k, modulus);
    for r in relations {
        lattice.insert(r.iter().map(|&x| x as i128).collect());
    }
    smith(lattice.rows.clone(), modulus as i128)
        .diag
        .into_iter()
        .filter(|&x| x > 1)
        .collect()
}

// Drop each generator already inside the span of the ones kept before it.
fn independent_prefix<E, F>(gens: &[E], identity: &E, op: &F) -> Vec<E>
where
    E: Clone + Eq + Hash,
    F: Fn(&E, &E) -> E,
{
    let mut span: HashSet<E> = HashSet::from([identity.clone()]);
    let mut kept = Vec::new();
    for g in gens {
        if span.contains(g) {
            continue;
        }
        let base: Vec<E> = span.iter().cloned().collect();
        let mut coset_rep = g.clone();
        while !span.contains(&coset_rep) {
            span.extend(base.iter().map(|h| op(h, &coset_rep)));
            coset_rep = op(&coset_rep, g);
        }
        kept.push(g.clone());
    }
    kept
}

/// A finite abelian group `Z/d_1 x ... x Z/d_r` with `d_1 | d_2 | ... | d_r`,
/// realized concretely on elements of type `E`.
#[derive(Debug, Clone)]
pub struct AbGroup<E> {
    generators: Vec<E>,
    divisors: Vec<u64>,
    order: u64,
    identity: E,
    dlog: HashMap<E, Vec<u64>>,
}

impl<E: Clone + Eq + Hash> AbGroup<E> {
    pub fn trivial(identity: E) -> Self {
        let mut dlog = HashMap::new();
        dlog.insert(identity.clone(), Vec::new());
        AbGroup { generators: Vec::new(), divisors: Vec::new(), order: 1, identity, dlog }
    }

    /// The subgroup generated by `gens` under `op`.
    pub fn generated_by<F>(gens: &[E], identity: E, op: F) -> Self
    where
        F: Fn(&E, &E) -> E,
    {
        let gens = &independent_prefix(gens, &identity, &op);
        let k = gens.len();
        let mut elems = vec![identity.clone()];
        let mut coords: Vec<Vec<i64>> = vec![vec![0; k]];
        let mut index: HashMap<E, usize> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (j, g) in gens.iter().enumerate() {
                let y = op(&elems[i], g);
                let mut v = coords[i].clone();
                v[j] += 1;
                match index.get(&y) {
                    Some(&t) => {
                        let rel: Vec<i64> = v.iter().zip(&coords[t]).map(|(a, b)| a - b).collect();
                        if rel.iter().any(|&x| x != 0) {
                            relations.push(rel);
                        }
                    }
                    None => {
                        index.insert(y.clone(), elems.len());
                        queue.push_back(elems.len());
                        elems.push(y);
                        coords.push(v);
                    }
                }
            }
        }
        let order = elems.len() as u64;
        if order == 1 {
            return Self::trivial(identity);
        }

        let mut lattice = RelationLattice::new(k, order);
        for r in &relations {
            lattice.insert(r.iter().map(|&x| x as i128).collect());
        }
        assert_eq!(
            lattice.determinant(),
            order as i128,
            "relation lattice does not match the enumerated order"
        );
        let snf = smith(lattice.rows.clone(), order as i128);
        let kept: Vec<usize> = (0..k).filter(|&t| snf.diag[t] > 1).collect();
        let divisors: Vec<u64> = kept.iter().map(|&t| snf.diag[t]).collect();

        let pow = |base: &E, mut e: u64| {
            let mut acc = identity.clone();
            let mut b = base.clone();
            while e > 0 {
                if e & 1 == 1 {
                    acc = op(&acc, &b);
                }
                b = op(&b, &b);
                e >>= 1;
            }
            acc
        };
        let generators: Vec<E> = kept
            .iter()
            .map(|&t| {
                (0..k).fold(identity.clone(), |acc, j| {
                    let e = snf.vinv[t][j].rem_euclid(order as i128) as u64;
                    op(&acc, &pow(&gens[j], e))
                })
            })
            .collect();

        let mut dlog = HashMap::new();
        if order <= DLOG_LIMIT {
            for (x, c) in elems.into_iter().zip(coords) {
                let y: Vec<u64> = kept
                    .iter()
                    .map(|&t| {
                        let s: i128 = (0..k).map(|j| c[j] as i128 * snf.v[j][t]).sum();
                        s.rem_euclid(snf.diag[t] as i128) as u64
                    })
                    .collect();
                dlog.insert(x, y);
            }
        }
        AbGroup { generators, divisors, order, identity, dlog }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn elementary_divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// Basis aligned with [`Self::elementary_divisors`].
    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn has_dlog_table(&self) -> bool {
        !self.dlog.is_empty()
    }

    /// Coordinates of `x` in the basis, if `x` lies in the group.
    pub fn dlog(&self, x: &E) -> Option<&[u64]> {
        self.dlog.get(x).map(Vec::as_slice)
    }

    pub fn contains(&self, x: &E) -> bool {
        self.dlog.contains_key(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = &E> {
        self.dlog.keys()
    }

    /// Order of an element from its coordinates.
    pub fn element_order(&self, x: &E) -> Option<u64> {
        let c = self.dlog(x)?;
        Some(c.iter().zip(&self.divisors).fold(1u64, |acc, (&ci, &di)| {
            let o = di / gcd(ci, di);
            acc / gcd(acc, o) * o
        }))
    }

    /// Number of elements killed by `n`: `prod gcd(n, d_i)`.
    pub fn count_killed_by(&self, n: u64) -> u64 {
        self.divisors.iter().map(|&d| gcd(n, d)).product()
    }

    /// Elementary divisors of the quotient by the subgroup generated by `sub`.
    pub fn quotient_divisors(&self, sub: &[E]) -> Vec<u64> {
        let r = self.divisors.len();
        if r == 0 {
            return Vec::new();
        }
        let mut rels: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = vec![0i64; r];
                v[i] = self.divisors[i] as i64;
                v
            })
            .collect();
        for w in sub {
            let c = self.dlog(w).expect("subgroup element outside the group");
            rels.push(c.iter().map(|&x| x as i64).collect());
        }
        invariants_of_relations(r, self.order, &rels)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Structure of `Z/d_1 x ... x Z/d_r` as a string like `C2 x C4`, or `1`.
pub fn structure_string(divisors: &[u64]) -> String {
    if divisors.is_empty() {
        "1".to_string()
    } else {
        divisors.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join(" x ")
    }
}
