//! Set-theoretic representations of atom structures and their verification.
//!
//! Each atom is sent to a binary relation on a finite base, stored as a
//! square bit matrix. Relational composition is boolean matrix
//! multiplication over `u64` rows.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AtomStructure, Element};
use crate::geometry::ProjectivePlane;
use crate::lyndon::build_lyndon;

/// Square boolean matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    size: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        Relation {
            size,
            words,
            rows: vec![0; size * words],
        }
    }

    pub fn diagonal(size: usize) -> Self {
        let mut r = Self::empty(size);
        for i in 0..size {
            r.insert(i, i);
        }
        r
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(size);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.rows[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] &= !(1 << (j % 64));
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&w| w == 0)
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |i| {
            (0..self.size)
                .filter(move |&j| self.contains(i, j))
                .map(move |j| (i, j))
        })
    }

    pub fn union_with(&mut self, other: &Relation) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).any(|(a, b)| a & b != 0)
    }

    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty(self.size);
        for (i, j) in self.pairs() {
            t.insert(j, i);
        }
        t
    }

    /// `self ; other`: pairs `(i, k)` with some `j` such that `i self j` and `j other k`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let mut out = Relation::empty(self.size);
        for i in 0..self.size {
            let mut acc = vec![0u64; self.words];
            for (w, &word) in self.row(i).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let j = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (a, b) in acc.iter_mut().zip(other.row(j)) {
                        *a |= b;
                    }
                }
            }
            out.row_mut(i).copy_from_slice(&acc);
        }
        out
    }

    /// Least pair in which the two relations differ.
    pub fn first_difference(&self, other: &Relation) -> Option<(usize, usize)> {
        for i in 0..self.size {
            let (a, b) = (self.row(i), other.row(i));
            for w in 0..self.words {
                let diff = a[w] ^ b[w];
                if diff != 0 {
                    return Some((i, w * 64 + diff.trailing_zeros() as usize));
                }
            }
        }
        None
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("the affine construction is unsound at order {0}: lines have too few points")]
    ConstructionUnsound(u32),
    #[error("expected {expected} relations, got {got}")]
    RelationCount { expected: usize, got: usize },
    #[error("relation for `{atom}` is over a base of {got}, expected {expected}")]
    BaseMismatch {
        atom: String,
        expected: usize,
        got: usize,
    },
    #[error("pair ({0}, {1}) is outside the base")]
    PairOutOfRange(usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed representation JSON: {0}")]
    Json(String),
}

/// An assignment of binary relations on `0..base` to the atoms of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    target: AtomStructure,
    base: usize,
    relations: Vec<Relation>,
}

/// First failed condition of a representation, least witness first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum ReprViolation {
    IdentityNotDiagonal {
        pair: (usize, usize),
    },
    Overlap {
        atoms: (usize, usize),
        pair: (usize, usize),
    },
    Uncovered {
        pair: (usize, usize),
    },
    Converse {
        atom: usize,
        pair: (usize, usize),
    },
    /// `pair` is in exactly one of `R(a);R(b)` and the union of `R(c)` for `c ≤ a;b`.
    Composition {
        atoms: (usize, usize),
        pair: (usize, usize),
        in_product: bool,
    },
}

impl Representation {
    pub fn new(
        target: AtomStructure,
        base: usize,
        relations: Vec<Relation>,
    ) -> Result<Self, ReprError> {
        if relations.len() != target.atom_count() {
            return Err(ReprError::RelationCount {
                expected: target.atom_count(),
                got: relations.len(),
            });
        }
        if let Some((a, r)) = relations.iter().enumerate().find(|(_, r)| r.size() != base) {
            return Err(ReprError::BaseMismatch {
                atom: target.atom_name(a).to_owned(),
                expected: base,
                got: r.size(),
            });
        }
        Ok(Representation {
            target,
            base,
            relations,
        })
    }

    pub fn target(&self) -> &AtomStructure {
        &self.target
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn relation(&self, atom: usize) -> &Relation {
        &self.relations[atom]
    }

    pub fn relation_mut(&mut self, atom: usize) -> &mut Relation {
        &mut self.relations[atom]
    }

    /// Union of the relations of the atoms in `x`.
    pub fn image(&self, x: Element) -> Relation {
        let mut out = Relation::empty(self.base);
        for a in x.atoms() {
            out.union_with(&self.relations[a]);
        }
        out
    }

    /// Checks, in order: that the identity is the diagonal, that the
    /// relations partition the square, converse as transpose, and
    /// composition on every atom pair.
    ///
    /// The target is assumed to satisfy the axioms; nothing here checks it.
    pub fn verify(&self) -> Result<(), ReprViolation> {
        let alg = &self.target;
        let n = alg.atom_count();
        let diagonal = Relation::diagonal(self.base);
        if let Some(pair) = self.relations[alg.identity_atom()].first_difference(&diagonal) {
            return Err(ReprViolation::IdentityNotDiagonal { pair });
        }

        // every pair must lie in exactly one relation
        for i in 0..self.base {
            for j in 0..self.base {
                let mut owner = None;
                for a in 0..n {
                    if self.relations[a].contains(i, j) {
                        if let Some(first) = owner {
                            return Err(ReprViolation::Overlap {
                                atoms: (first, a),
                                pair: (i, j),
                            });
                        }
                        owner = Some(a);
                    }
                }
                if owner.is_none() {
                    return Err(ReprViolation::Uncovered { pair: (i, j) });
                }
            }
        }

        for a in 0..n {
            let transposed = self.relations[alg.converse_atom(a)].transpose();
            if let Some(pair) = self.relations[a].first_difference(&transposed) {
                return Err(ReprViolation::Converse { atom: a, pair });
            }
        }

        for a in 0..n {
            for b in 0..n {
                let product = self.relations[a].compose(&self.relations[b]);
                let expected = self.image(alg.atom_compose(a, b));
                if let Some(pair) = product.first_difference(&expected) {
                    return Err(ReprViolation::Composition {
                        atoms: (a, b),
                        pair,
                        in_product: product.contains(pair.0, pair.1),
                    });
                }
            }
        }
        Ok(())
    }

    /// The atom structure the relations actually realize: `c ≤ a;b` iff
    /// `R(c)` meets `R(a);R(b)`.
    pub fn induced_structure(&self) -> Result<AtomStructure, AlgebraError> {
        let alg = &self.target;
        let n = alg.atom_count();
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let product = self.relations[a].compose(&self.relations[b]);
                        (0..n)
                            .filter(|&c| self.relations[c].intersects(&product))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let converse = (0..n)
            .map(|a| {
                let t = self.relations[a].transpose();
                (0..n).find(|&c| self.relations[c] == t).unwrap_or(a)
            })
            .collect();
        AtomStructure::new(
            alg.name(),
            alg.atom_names().to_vec(),
            alg.identity_atom(),
            converse,
            table,
        )
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            base: self.base,
            relations: (0..self.target.atom_count())
                .map(|a| {
                    (
                        self.target.atom_name(a).to_owned(),
                        self.relations[a].pairs().map(|(i, j)| [i, j]).collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(json: &RepresentationJson, target: AtomStructure) -> Result<Self, ReprError> {
        let mut relations = vec![Relation::empty(json.base); target.atom_count()];
        for (name, pairs) in &json.relations {
            let a = target
                .atom_index(name)
                .ok_or_else(|| AlgebraError::UnknownAtom(name.clone()))?;
            for &[i, j] in pairs {
                if i >= json.base || j >= json.base {
                    return Err(ReprError::PairOutOfRange(i, j));
                }
                relations[a].insert(i, j);
            }
        }
        Self::new(target, json.base, relations)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationJson {
    pub base: usize,
    pub relations: IndexMap<String, Vec<[usize; 2]>>,
}

/// Represents `E_{q+2}` on the affine plane obtained by deleting the last
/// line of `plane`: two distinct affine points are related by the atom of
/// the point at infinity on the line joining them.
///
/// Order 2 is refused; its affine lines have two points, so no atom
/// composes with itself into itself.
pub fn build_affine_representation(plane: &ProjectivePlane) -> Result<Representation, ReprError> {
    if plane.order() < 3 {
        return Err(ReprError::ConstructionUnsound(plane.order()));
    }
    build_affine_representation_unchecked(plane)
}

/// As [`build_affine_representation`], without refusing small orders.
pub fn build_affine_representation_unchecked(
    plane: &ProjectivePlane,
) -> Result<Representation, ReprError> {
    let q = plane.order() as usize;
    let target = build_lyndon(q + 1)?;
    let infinity = plane.lines().len() - 1;
    let directions: Vec<usize> = plane.points_on(infinity).collect();
    // base index of each projective point off the line at infinity
    let mut affine = vec![None; plane.points().len()];
    let mut base = 0;
    for (p, slot) in affine.iter_mut().enumerate() {
        if !plane.incident(p, infinity) {
            *slot = Some(base);
            base += 1;
        }
    }

    let mut relations = vec![Relation::empty(base); q + 2];
    relations[0] = Relation::diagonal(base);
    for line in (0..plane.lines().len()).filter(|&l| l != infinity) {
        let Some(dir) = directions.iter().position(|&d| plane.incident(d, line)) else {
            continue;
        };
        let on_line: Vec<usize> = plane.points_on(line).filter_map(|p| affine[p]).collect();
        let rel = &mut relations[dir + 1];
        for &x in &on_line {
            for &y in &on_line {
                if x != y {
                    rel.insert(x, y);
                }
            }
        }
    }
    Representation::new(target, base, relations)
}

pub fn verify_representation(rep: &Representation) -> Result<(), ReprViolation> {
    rep.verify()
}
