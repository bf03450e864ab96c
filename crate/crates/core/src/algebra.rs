//! Finite integral relation algebras given by atom structures.
//!
//! An element is a set of atoms stored as a bitmask, so the Boolean reduct is
//! exact by construction. Composition and converse are defined on atoms and
//! extended to arbitrary elements by complete additivity.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard upper bound on the number of atoms: elements are `u64` bitmasks.
pub const MAX_ATOMS: usize = 64;

/// A set of atoms of some atom structure.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u64);

impl Element {
    pub const EMPTY: Element = Element(0);

    pub const fn from_bits(bits: u64) -> Self {
        Element(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn atom(index: usize) -> Self {
        Element(1 << index)
    }

    pub const fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn union(self, other: Element) -> Element {
        Element(self.0 | other.0)
    }

    pub const fn intersection(self, other: Element) -> Element {
        Element(self.0 & other.0)
    }

    pub const fn is_subset(self, other: Element) -> bool {
        self.0 & !other.0 == 0
    }

    /// Atom indices in ascending order.
    pub fn atoms(self) -> Atoms {
        Atoms(self.0)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms()).finish()
    }
}

impl FromIterator<usize> for Element {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Element(iter.into_iter().fold(0, |acc, i| acc | 1 << i))
    }
}

/// Iterator over the atom indices of an [`Element`].
#[derive(Clone, Debug)]
pub struct Atoms(u64);

impl Iterator for Atoms {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Atoms {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra has no atoms")]
    NoAtoms,
    #[error("{count} atoms exceeds the capacity of {capacity}")]
    Capacity { count: usize, capacity: usize },
    #[error("duplicate atom name `{0}`")]
    DuplicateAtom(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("converse is not a permutation of the atoms")]
    ConverseNotPermutation,
    #[error("converse is not an involution at atom `{0}`")]
    ConverseNotInvolution(String),
    #[error("identity atom `{0}` is not self-converse")]
    IdentityNotSelfConverse(String),
    #[error("composition table is missing the entry for ({0}, {1})")]
    TableNotTotal(String, String),
    #[error("composition table entry has wrong size")]
    TableShape,
    #[error("element {bits:#x} is not an element of this algebra ({atoms} atoms)")]
    ForeignElement { bits: u64, atoms: usize },
    #[error("malformed algebra JSON: {0}")]
    Json(String),
}

/// A finite integral relation algebra, presented by its atoms.
///
/// Construction validates the structural invariants (converse is an
/// involution fixing the identity, the table is total). Whether the result is
/// actually a relation algebra is the business of [`AtomStructure::check_axioms`].
#[derive(Clone, PartialEq, Eq)]
pub struct AtomStructure {
    name: String,
    atoms: Vec<String>,
    identity: usize,
    converse: Vec<usize>,
    // row-major, atoms.len() squared
    table: Vec<Element>,
    universe: Element,
}

impl fmt::Debug for AtomStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AtomStructure")
            .field("name", &self.name)
            .field("atoms", &self.atoms)
            .finish_non_exhaustive()
    }
}

fn valid_atom_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '+' | ',' | '"'))
}

impl AtomStructure {
    /// Builds a structure with the default capacity of [`MAX_ATOMS`].
    ///
    /// `table[a][b]` is the composition of atoms `a` and `b`.
    pub fn new(
        name: impl Into<String>,
        atoms: Vec<String>,
        identity: usize,
        converse: Vec<usize>,
        table: Vec<Vec<Element>>,
    ) -> Result<Self, AlgebraError> {
        Self::with_capacity(name, atoms, identity, converse, table, MAX_ATOMS)
    }

    pub fn with_capacity(
        name: impl Into<String>,
        atoms: Vec<String>,
        identity: usize,
        converse: Vec<usize>,
        table: Vec<Vec<Element>>,
        capacity: usize,
    ) -> Result<Self, AlgebraError> {
        let n = atoms.len();
        let capacity = capacity.min(MAX_ATOMS);
        if n == 0 {
            return Err(AlgebraError::NoAtoms);
        }
        if n > capacity {
            return Err(AlgebraError::Capacity { count: n, capacity });
        }
        for (i, a) in atoms.iter().enumerate() {
            if !valid_atom_name(a) {
                return Err(AlgebraError::InvalidAtomName(a.clone()));
            }
            if atoms[..i].contains(a) {
                return Err(AlgebraError::DuplicateAtom(a.clone()));
            }
        }
        if identity >= n {
            return Err(AlgebraError::UnknownAtom(format!("#{identity}")));
        }
        if converse.len() != n || converse.iter().any(|&c| c >= n) {
            return Err(AlgebraError::ConverseNotPermutation);
        }
        for (a, &c) in converse.iter().enumerate() {
            if converse[c] != a {
                return Err(AlgebraError::ConverseNotInvolution(atoms[a].clone()));
            }
        }
        if converse[identity] != identity {
            return Err(AlgebraError::IdentityNotSelfConverse(
                atoms[identity].clone(),
            ));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::TableShape);
        }
        let universe = Element(if n == 64 { u64::MAX } else { (1 << n) - 1 });
        let table: Vec<Element> = table.into_iter().flatten().collect();
        if table.iter().any(|e| !e.is_subset(universe)) {
            return Err(AlgebraError::TableShape);
        }
        Ok(AtomStructure {
            name: name.into(),
            atoms,
            identity,
            converse,
            table,
            universe,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_name(&self, atom: usize) -> &str {
        &self.atoms[atom]
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn identity_atom(&self) -> usize {
        self.identity
    }

    pub fn converse_atom(&self, atom: usize) -> usize {
        self.converse[atom]
    }

    /// Composition of two atoms.
    #[inline]
    pub fn atom_compose(&self, a: usize, b: usize) -> Element {
        self.table[a * self.atoms.len() + b]
    }

    /// Number of elements, `2^atoms`, if it fits in a `u64`.
    pub fn element_count(&self) -> Option<u64> {
        1u64.checked_shl(self.atoms.len() as u32)
    }

    /// All elements in ascending bitmask order. Panics above 32 atoms.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        assert!(self.atoms.len() <= 32, "too many elements to enumerate");
        (0..=self.universe.0).map(Element)
    }

    /// Validates that `bits` names an element of this algebra.
    pub fn element(&self, bits: u64) -> Result<Element, AlgebraError> {
        let e = Element(bits);
        if e.is_subset(self.universe) {
            Ok(e)
        } else {
            Err(AlgebraError::ForeignElement {
                bits,
                atoms: self.atoms.len(),
            })
        }
    }

    pub fn element_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Element, AlgebraError> {
        names
            .iter()
            .map(|n| {
                self.atom_index(n.as_ref())
                    .ok_or_else(|| AlgebraError::UnknownAtom(n.as_ref().to_owned()))
            })
            .collect()
    }

    pub fn element_names(&self, x: Element) -> Vec<String> {
        x.atoms().map(|a| self.atoms[a].clone()).collect()
    }

    pub fn zero(&self) -> Element {
        Element::EMPTY
    }

    pub fn one(&self) -> Element {
        self.universe
    }

    pub fn identity(&self) -> Element {
        Element::atom(self.identity)
    }

    pub fn diversity(&self) -> Element {
        self.complement(self.identity())
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        x.union(y)
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        x.intersection(y)
    }

    #[inline]
    pub fn complement(&self, x: Element) -> Element {
        Element(self.universe.0 & !x.0)
    }

    pub fn converse(&self, x: Element) -> Element {
        x.atoms().map(|a| self.converse[a]).collect()
    }

    /// Composition by complete additivity over the atoms below `x` and `y`.
    pub fn compose(&self, x: Element, y: Element) -> Element {
        let n = self.atoms.len();
        let mut out = 0u64;
        for a in x.atoms() {
            let row = &self.table[a * n..(a + 1) * n];
            for b in y.atoms() {
                out |= row[b].0;
            }
            if out == self.universe.0 {
                break;
            }
        }
        Element(out)
    }

    /// Checks the relation algebra axioms on atoms.
    ///
    /// All operations are completely additive, so the atom-level statements
    /// are equivalent to the universally quantified ones. Witnesses are the
    /// least offending tuples in atom order.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.atoms.len();
        let id = self.identity();

        let associativity = triples(n)
            .find_map(|(a, b, c)| {
                let lhs = self.compose(self.atom_compose(a, b), Element::atom(c));
                let rhs = self.compose(Element::atom(a), self.atom_compose(b, c));
                (lhs != rhs).then_some(Witness::Triple {
                    atoms: [a, b, c],
                    lhs,
                    rhs,
                })
            })
            .into();

        let identity_right = (0..n)
            .find_map(|a| {
                let lhs = self.compose(Element::atom(a), id);
                (lhs != Element::atom(a)).then_some(Witness::Single {
                    atom: a,
                    lhs,
                    rhs: Element::atom(a),
                })
            })
            .into();

        let identity_left = (0..n)
            .find_map(|a| {
                let lhs = self.compose(id, Element::atom(a));
                (lhs != Element::atom(a)).then_some(Witness::Single {
                    atom: a,
                    lhs,
                    rhs: Element::atom(a),
                })
            })
            .into();

        let converse_involution = (0..n)
            .find_map(|a| {
                let lhs = self.converse(self.converse(Element::atom(a)));
                (lhs != Element::atom(a)).then_some(Witness::Single {
                    atom: a,
                    lhs,
                    rhs: Element::atom(a),
                })
            })
            .into();

        let converse_antidistribution = pairs(n)
            .find_map(|(a, b)| {
                let lhs = self.converse(self.atom_compose(a, b));
                let rhs = self.atom_compose(self.converse[b], self.converse[a]);
                (lhs != rhs).then_some(Witness::Pair {
                    atoms: [a, b],
                    lhs,
                    rhs,
                })
            })
            .into();

        let cycle_law = triples(n)
            .find_map(|(a, b, c)| {
                let m = self.cycle_memberships(a, b, c);
                (m[0] != m[1] || m[1] != m[2]).then_some(Witness::Cycle {
                    atoms: [a, b, c],
                    memberships: m,
                })
            })
            .into();

        AxiomReport {
            algebra: self.name.clone(),
            results: vec![
                (Axiom::Associativity, associativity),
                (Axiom::IdentityRight, identity_right),
                (Axiom::IdentityLeft, identity_left),
                (Axiom::ConverseInvolution, converse_involution),
                (Axiom::ConverseAntidistribution, converse_antidistribution),
                (Axiom::CycleLaw, cycle_law),
            ],
        }
    }

    /// `[c ≤ a;b, b ≤ a˘;c, a ≤ c;b˘]`; the cycle law demands all agree.
    pub fn cycle_memberships(&self, a: usize, b: usize, c: usize) -> [bool; 3] {
        [
            self.atom_compose(a, b).contains(c),
            self.atom_compose(self.converse[a], c).contains(b),
            self.atom_compose(c, self.converse[b]).contains(a),
        ]
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut converse = OrderedMap::new();
        let mut table = OrderedMap::new();
        for (a, name) in self.atoms.iter().enumerate() {
            converse.insert(name.clone(), self.atoms[self.converse[a]].clone());
            let row = (0..self.atoms.len())
                .map(|b| {
                    (
                        self.atoms[b].clone(),
                        self.element_names(self.atom_compose(a, b)),
                    )
                })
                .collect();
            table.insert(name.clone(), row);
        }
        AlgebraJson {
            name: self.name.clone(),
            atoms: self.atoms.clone(),
            identity: self.atoms[self.identity].clone(),
            converse,
            table,
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self, AlgebraError> {
        let index: HashMap<&str, usize> = json
            .atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| AlgebraError::UnknownAtom(name.to_owned()))
        };
        let n = json.atoms.len();
        let identity = lookup(&json.identity)?;
        let mut converse: Vec<usize> = (0..n).collect();
        for (a, c) in &json.converse {
            converse[lookup(a)?] = lookup(c)?;
        }
        for key in json.table.keys() {
            lookup(key)?;
        }
        let mut table = vec![vec![Element::EMPTY; n]; n];
        for (a, an) in json.atoms.iter().enumerate() {
            let row = json
                .table
                .get(an)
                .ok_or_else(|| AlgebraError::TableNotTotal(an.clone(), json.atoms[0].clone()))?;
            for key in row.keys() {
                lookup(key)?;
            }
            for (b, bn) in json.atoms.iter().enumerate() {
                let entry = row
                    .get(bn)
                    .ok_or_else(|| AlgebraError::TableNotTotal(an.clone(), bn.clone()))?;
                let mut e = Element::EMPTY;
                for c in entry {
                    e = e.union(Element::atom(lookup(c)?));
                }
                table[a][b] = e;
            }
        }
        AtomStructure::new(
            json.name.clone(),
            json.atoms.clone(),
            identity,
            converse,
            table,
        )
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("algebra serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, AlgebraError> {
        let json: AlgebraJson =
            serde_json::from_str(s).map_err(|e| AlgebraError::Json(e.to_string()))?;
        Self::from_json(&json)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)))
}

/// JSON object with insertion-ordered keys.
type OrderedMap<V> = IndexMap<String, V>;

/// Canonical on-disk form of an algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub name: String,
    pub atoms: Vec<String>,
    pub identity: String,
    #[serde(default)]
    pub converse: OrderedMap<String>,
    pub table: OrderedMap<OrderedMap<Vec<String>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `(a;b);c = a;(b;c)`
    Associativity,
    /// `a;1' = a`
    IdentityRight,
    /// `1';a = a`
    IdentityLeft,
    /// `a˘˘ = a`
    ConverseInvolution,
    /// `(a;b)˘ = b˘;a˘`
    ConverseAntidistribution,
    /// `c ≤ a;b ⇔ b ≤ a˘;c ⇔ a ≤ c;b˘`
    CycleLaw,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Associativity,
        Axiom::IdentityRight,
        Axiom::IdentityLeft,
        Axiom::ConverseInvolution,
        Axiom::ConverseAntidistribution,
        Axiom::CycleLaw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::IdentityRight => "identity_right",
            Axiom::IdentityLeft => "identity_left",
            Axiom::ConverseInvolution => "converse_involution",
            Axiom::ConverseAntidistribution => "converse_antidistribution",
            Axiom::CycleLaw => "cycle_law",
        }
    }
}

/// Atoms (and derived values) falsifying an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Single {
        atom: usize,
        lhs: Element,
        rhs: Element,
    },
    Pair {
        atoms: [usize; 2],
        lhs: Element,
        rhs: Element,
    },
    Triple {
        atoms: [usize; 3],
        lhs: Element,
        rhs: Element,
    },
    Cycle {
        atoms: [usize; 3],
        memberships: [bool; 3],
    },
}

impl Witness {
    pub fn atoms(&self) -> &[usize] {
        match self {
            Witness::Single { atom, .. } => std::slice::from_ref(atom),
            Witness::Pair { atoms, .. } => atoms,
            Witness::Triple { atoms, .. } | Witness::Cycle { atoms, .. } => atoms,
        }
    }

    /// Re-evaluates the witness against `alg`: true iff it falsifies `axiom` there.
    pub fn refutes(&self, alg: &AtomStructure, axiom: Axiom) -> bool {
        let at = Element::atom;
        match (axiom, self) {
            (
                Axiom::Associativity,
                Witness::Triple {
                    atoms: [a, b, c], ..
                },
            ) => {
                alg.compose(alg.compose(at(*a), at(*b)), at(*c))
                    != alg.compose(at(*a), alg.compose(at(*b), at(*c)))
            }
            (Axiom::IdentityRight, Witness::Single { atom, .. }) => {
                alg.compose(at(*atom), alg.identity()) != at(*atom)
            }
            (Axiom::IdentityLeft, Witness::Single { atom, .. }) => {
                alg.compose(alg.identity(), at(*atom)) != at(*atom)
            }
            (Axiom::ConverseInvolution, Witness::Single { atom, .. }) => {
                alg.converse(alg.converse(at(*atom))) != at(*atom)
            }
            (Axiom::ConverseAntidistribution, Witness::Pair { atoms: [a, b], .. }) => {
                alg.converse(alg.compose(at(*a), at(*b)))
                    != alg.compose(alg.converse(at(*b)), alg.converse(at(*a)))
            }
            (
                Axiom::CycleLaw,
                Witness::Cycle {
                    atoms: [a, b, c], ..
                },
            ) => {
                let m = alg.cycle_memberships(*a, *b, *c);
                m[0] != m[1] || m[1] != m[2]
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    Fail(Witness),
}

impl From<Option<Witness>> for AxiomStatus {
    fn from(w: Option<Witness>) -> Self {
        w.map_or(AxiomStatus::Pass, AxiomStatus::Fail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub algebra: String,
    pub results: Vec<(Axiom, AxiomStatus)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, s)| *s == AxiomStatus::Pass)
    }

    pub fn status(&self, axiom: Axiom) -> &AxiomStatus {
        &self
            .results
            .iter()
            .find(|(a, _)| *a == axiom)
            .expect("every axiom is reported")
            .1
    }

    pub fn failed(&self) -> Vec<Axiom> {
        self.results
            .iter()
            .filter(|(_, s)| *s != AxiomStatus::Pass)
            .map(|(a, _)| *a)
            .collect()
    }

    pub fn to_json(&self, alg: &AtomStructure) -> serde_json::Value {
        use serde_json::json;
        let names =
            |atoms: &[usize]| -> Vec<&str> { atoms.iter().map(|&a| alg.atom_name(a)).collect() };
        let axioms: Vec<_> = self
            .results
            .iter()
            .map(|(axiom, status)| match status {
                AxiomStatus::Pass => json!({ "axiom": axiom.name(), "status": "pass" }),
                AxiomStatus::Fail(w) => {
                    let mut witness = json!({ "atoms": names(w.atoms()) });
                    match w {
                        Witness::Single { lhs, rhs, .. }
                        | Witness::Pair { lhs, rhs, .. }
                        | Witness::Triple { lhs, rhs, .. } => {
                            witness["lhs"] = json!(alg.element_names(*lhs));
                            witness["rhs"] = json!(alg.element_names(*rhs));
                        }
                        Witness::Cycle { memberships, .. } => {
                            witness["memberships"] = json!(memberships);
                        }
                    }
                    json!({ "axiom": axiom.name(), "status": "fail", "witness": witness })
                }
            })
            .collect();
        json!({ "algebra": self.algebra, "pass": self.all_pass(), "axioms": axioms })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Complex algebra of the symmetric group S3: atoms are the group elements.
    pub fn s3() -> AtomStructure {
        // permutations of {0,1,2} as image arrays
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
        // (p*q)(i) = p(q(i))
        let mul = |a: usize, b: usize| {
            let (p, q) = (perms[a], perms[b]);
            index([p[q[0]], p[q[1]], p[q[2]]])
        };
        let inv = |a: usize| (0..6).find(|&b| mul(a, b) == 0).unwrap();
        let table = (0..6)
            .map(|a| (0..6).map(|b| Element::atom(mul(a, b))).collect())
            .collect();
        AtomStructure::new(
            "S3",
            names.iter().map(|s| s.to_string()).collect(),
            0,
            (0..6).map(inv).collect(),
            table,
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
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::lyndon::build_lyndon;

    fn names(alg: &AtomStructure, x: Element) -> Vec<String> {
        alg.element_names(x)
    }

    #[test]
    fn boolean_operations() {
        let e5 = build_lyndon(4).unwrap();
        let a1 = e5.element_from_names(&["a1"]).unwrap();
        let a2 = e5.element_from_names(&["a2"]).unwrap();
        assert_eq!(names(&e5, e5.join(a1, a2)), ["a1", "a2"]);
        assert_eq!(e5.meet(a1, a2), e5.zero());
        assert_eq!(e5.complement(e5.one()), e5.zero());
        assert_eq!(names(&e5, e5.diversity()), ["a1", "a2", "a3", "a4"]);
        assert_eq!(e5.one().count(), 5);
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let e5 = build_lyndon(4).unwrap();
        let e8 = build_lyndon(7).unwrap();
        let from_e8 = e8.element_from_names(&["a7"]).unwrap();
        assert!(matches!(
            e5.element(from_e8.bits()),
            Err(AlgebraError::ForeignElement { .. })
        ));
        assert!(e5.element(0b11111).is_ok());
        assert!(e5.element_from_names(&["a7"]).is_err());
    }

    #[test]
    fn converse_examples() {
        let e5 = build_lyndon(4).unwrap();
        let a1 = Element::atom(1);
        assert_eq!(e5.converse(a1), a1);
        assert_eq!(e5.converse(e5.zero()), e5.zero());

        let s3 = s3();
        let c = s3.element_from_names(&["(123)"]).unwrap();
        assert_eq!(names(&s3, s3.converse(c)), ["(132)"]);
        assert!(s3.check_axioms().all_pass());
    }

    #[test]
    fn compose_examples() {
        let e5 = build_lyndon(4).unwrap();
        let el = |xs: &[&str]| e5.element_from_names(xs).unwrap();
        assert_eq!(
            names(&e5, e5.compose(el(&["a1"]), el(&["a1"]))),
            ["1'", "a1"]
        );
        assert_eq!(
            names(&e5, e5.compose(el(&["a1"]), el(&["a2"]))),
            ["a3", "a4"]
        );
        assert_eq!(e5.compose(el(&["a1", "a3"]), e5.zero()), e5.zero());
        assert_eq!(
            names(&e5, e5.compose(el(&["a1", "a2"]), el(&["a1"]))),
            ["1'", "a1", "a3", "a4"]
        );
    }

    #[test]
    fn axiom_examples() {
        assert!(build_lyndon(4).unwrap().check_axioms().all_pass());
        assert!(one_atom().check_axioms().all_pass());

        let e3 = build_lyndon(2).unwrap();
        let report = e3.check_axioms();
        let AxiomStatus::Fail(w) = report.status(Axiom::Associativity) else {
            panic!("E3 must fail associativity");
        };
        assert_eq!(
            *w,
            Witness::Triple {
                atoms: [1, 1, 2],
                lhs: Element::atom(2),
                rhs: Element::EMPTY
            }
        );
        assert!(w.refutes(&e3, Axiom::Associativity));
    }

    #[test]
    fn construction_rejects_bad_structures() {
        let two = || vec!["1'".to_string(), "a".to_string()];
        let table = || {
            vec![
                vec![Element::atom(0), Element::atom(1)],
                vec![Element::atom(1), Element::atom(0)],
            ]
        };
        assert_eq!(
            AtomStructure::new("x", vec![], 0, vec![], vec![]),
            Err(AlgebraError::NoAtoms)
        );
        assert!(matches!(
            AtomStructure::new("x", two(), 0, vec![1, 0], table()),
            Err(AlgebraError::IdentityNotSelfConverse(_))
        ));
        assert!(matches!(
            AtomStructure::new("x", two(), 0, vec![0, 0], table()),
            Err(AlgebraError::ConverseNotInvolution(_))
        ));
        assert!(matches!(
            AtomStructure::new("x", vec!["1'".into(), "1'".into()], 0, vec![0, 1], table()),
            Err(AlgebraError::DuplicateAtom(_))
        ));
        assert!(matches!(
            AtomStructure::with_capacity("x", two(), 0, vec![0, 1], table(), 1),
            Err(AlgebraError::Capacity {
                count: 2,
                capacity: 1
            })
        ));
        assert!(AtomStructure::new("x", two(), 0, vec![0, 1], table()).is_ok());
    }

    #[test]
    fn json_defaults_and_totality() {
        let text = r#"{"name":"Z2","atoms":["e","g"],"identity":"e",
            "table":{"e":{"e":["e"],"g":["g"]},"g":{"e":["g"],"g":["e"]}}}"#;
        let z2 = AtomStructure::from_json_str(text).unwrap();
        assert_eq!(z2.converse_atom(1), 1);
        assert!(z2.check_axioms().all_pass());

        let partial = r#"{"name":"Z2","atoms":["e","g"],"identity":"e",
            "table":{"e":{"e":["e"],"g":["g"]},"g":{"e":["g"]}}}"#;
        assert_eq!(
            AtomStructure::from_json_str(partial),
            Err(AlgebraError::TableNotTotal("g".into(), "g".into()))
        );
        let unknown = r#"{"name":"Z2","atoms":["e","g"],"identity":"e",
            "table":{"e":{"e":["e"],"g":["h"]},"g":{"e":["g"],"g":["e"]}}}"#;
        assert_eq!(
            AtomStructure::from_json_str(unknown),
            Err(AlgebraError::UnknownAtom("h".into()))
        );
    }

    #[test]
    fn json_round_trip() {
        for alg in [build_lyndon(5).unwrap(), s3(), one_atom()] {
            let back = AtomStructure::from_json_str(&alg.to_json_string()).unwrap();
            assert_eq!(back, alg);
        }
    }
}
