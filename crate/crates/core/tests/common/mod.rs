//! Independent reference implementations used as test oracles.
//!
//! Everything here works on plain sets and bitmasks and touches the library
//! only through atom names and the raw atom composition table.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use relalg::{AtomStructure, Axiom, Element};

/// The Lyndon table computed from the definition, by atom name:
/// `a_i;a_i = 1' + a_i`, `a_i;a_j = -(1' + a_i + a_j)`, `1'` neutral.
pub fn lyndon_table(n: usize) -> HashMap<(String, String), BTreeSet<String>> {
    let names: Vec<String> = std::iter::once("1'".to_string())
        .chain((1..=n).map(|i| format!("a{i}")))
        .collect();
    let mut out = HashMap::new();
    for x in &names {
        for y in &names {
            let set: BTreeSet<String> = if x == "1'" {
                [y.clone()].into()
            } else if y == "1'" {
                [x.clone()].into()
            } else if x == y {
                ["1'".to_string(), x.clone()].into()
            } else {
                names
                    .iter()
                    .filter(|z| *z != "1'" && *z != x && *z != y)
                    .cloned()
                    .collect()
            };
            out.insert((x.clone(), y.clone()), set);
        }
    }
    out
}

/// The atom table of `alg` by name.
pub fn table_by_name(alg: &AtomStructure) -> HashMap<(String, String), BTreeSet<String>> {
    let n = alg.atom_count();
    let mut out = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let set = alg
                .element_names(alg.atom_compose(a, b))
                .into_iter()
                .collect();
            out.insert(
                (alg.atom_name(a).to_string(), alg.atom_name(b).to_string()),
                set,
            );
        }
    }
    out
}

/// Element-level operations built directly from the atom table.
pub struct Naive<'a> {
    alg: &'a AtomStructure,
    n: usize,
}

impl<'a> Naive<'a> {
    pub fn new(alg: &'a AtomStructure) -> Self {
        Naive {
            alg,
            n: alg.atom_count(),
        }
    }

    pub fn top(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn id(&self) -> u64 {
        1 << self.alg.identity_atom()
    }

    pub fn compose(&self, x: u64, y: u64) -> u64 {
        let mut out = 0;
        for a in 0..self.n {
            for b in 0..self.n {
                if x >> a & 1 == 1 && y >> b & 1 == 1 {
                    out |= self.alg.atom_compose(a, b).bits();
                }
            }
        }
        out
    }

    pub fn converse(&self, x: u64) -> u64 {
        (0..self.n)
            .filter(|&a| x >> a & 1 == 1)
            .fold(0, |acc, a| acc | 1 << self.alg.converse_atom(a))
    }

    pub fn complement(&self, x: u64) -> u64 {
        !x & self.top()
    }
}

/// Checks each axiom over every tuple of elements, not just atoms.
/// Only for algebras with at most 5 atoms.
pub fn universal_axioms(alg: &AtomStructure) -> Vec<(Axiom, bool)> {
    assert!(alg.atom_count() <= 5);
    let o = Naive::new(alg);
    let all: Vec<u64> = (0..=o.top()).collect();
    let id = o.id();
    let assoc = all.iter().all(|&x| {
        all.iter().all(|&y| {
            let xy = o.compose(x, y);
            all.iter()
                .all(|&z| o.compose(xy, z) == o.compose(x, o.compose(y, z)))
        })
    });
    let right = all.iter().all(|&x| o.compose(x, id) == x);
    let left = all.iter().all(|&x| o.compose(id, x) == x);
    let involution = all.iter().all(|&x| o.converse(o.converse(x)) == x);
    let antidist = all.iter().all(|&x| {
        all.iter()
            .all(|&y| o.converse(o.compose(x, y)) == o.compose(o.converse(y), o.converse(x)))
    });
    // (x;y)·z = 0  iff  (x˘;z)·y = 0  iff  (z;y˘)·x = 0
    let cycle = all.iter().all(|&x| {
        all.iter().all(|&y| {
            all.iter().all(|&z| {
                let p = o.compose(x, y) & z == 0;
                let q = o.compose(o.converse(x), z) & y == 0;
                let r = o.compose(z, o.converse(y)) & x == 0;
                p == q && q == r
            })
        })
    });
    vec![
        (Axiom::Associativity, assoc),
        (Axiom::IdentityRight, right),
        (Axiom::IdentityLeft, left),
        (Axiom::ConverseInvolution, involution),
        (Axiom::ConverseAntidistribution, antidist),
        (Axiom::CycleLaw, cycle),
    ]
}

/// `n = a² + b²` by a plain double loop.
pub fn naive_two_squares(n: u64) -> bool {
    (0..=n).take_while(|a| a * a <= n).any(|a| {
        (a..=n)
            .take_while(|b| a * a + b * b <= n)
            .any(|b| a * a + b * b == n)
    })
}

pub fn naive_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

/// Closure of `gens` plus the constants under every operation, pair by pair,
/// until nothing new appears.
pub fn naive_generate(alg: &AtomStructure, gens: &[u64]) -> BTreeSet<u64> {
    let o = Naive::new(alg);
    let mut set: BTreeSet<u64> = gens.iter().copied().collect();
    set.extend([0, o.top(), o.id()]);
    loop {
        let items: Vec<u64> = set.iter().copied().collect();
        let mut next = set.clone();
        for &x in &items {
            next.insert(o.complement(x));
            next.insert(o.converse(x));
            for &y in &items {
                next.insert(x | y);
                next.insert(x & y);
                next.insert(o.compose(x, y));
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// Checks that `images` defines an embedding by comparing every operation on
/// every element of the source (at most 2^10 elements).
pub fn naive_is_embedding(
    source: &AtomStructure,
    target: &AtomStructure,
    images: &[Element],
) -> bool {
    let s = Naive::new(source);
    let t = Naive::new(target);
    let h = |x: u64| {
        (0..source.atom_count())
            .filter(|&a| x >> a & 1 == 1)
            .fold(0u64, |acc, a| acc | images[a].bits())
    };
    let all: Vec<u64> = (0..=s.top()).collect();
    let mut seen = HashSet::new();
    h(s.id()) == t.id()
        && h(s.top()) == t.top()
        && all.iter().all(|&x| seen.insert(h(x)))
        && all.iter().all(|&x| {
            h(s.complement(x)) == t.complement(h(x))
                && h(s.converse(x)) == t.converse(h(x))
                && all.iter().all(|&y| {
                    h(x | y) == h(x) | h(y) && h(s.compose(x, y)) == t.compose(h(x), h(y))
                })
        })
}

/// The complex algebra of the symmetric group on three letters.
pub fn s3() -> AtomStructure {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let mul = |a: usize, b: usize| {
        let (p, q) = (perms[a], perms[b]);
        index([p[q[0]], p[q[1]], p[q[2]]])
    };
    let inv = |a: usize| (0..6).find(|&b| mul(a, b) == 0).unwrap();
    AtomStructure::new(
        "S3",
        names.iter().map(|s| s.to_string()).collect(),
        0,
        (0..6).map(inv).collect(),
        (0..6)
            .map(|a| (0..6).map(|b| Element::atom(mul(a, b))).collect())
            .collect(),
    )
    .unwrap()
}

pub fn one_atom() -> AtomStructure {
    AtomStructure::new(
        "I",
        vec!["1'".into()],
        0,
        vec![0],
        vec![vec![Element::atom(0)]],
    )
    .unwrap()
}

/// A copy of `alg` with table entry `(a, b)` replaced.
pub fn with_entry(alg: &AtomStructure, a: usize, b: usize, value: Element) -> AtomStructure {
    let n = alg.atom_count();
    let table = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if (x, y) == (a, b) {
                        value
                    } else {
                        alg.atom_compose(x, y)
                    }
                })
                .collect()
        })
        .collect();
    AtomStructure::new(
        alg.name(),
        alg.atom_names().to_vec(),
        alg.identity_atom(),
        (0..n).map(|x| alg.converse_atom(x)).collect(),
        table,
    )
    .unwrap()
}
