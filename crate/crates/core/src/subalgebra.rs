//! Generated subalgebras, Boolean closures and embeddings between algebras.

use std::collections::{HashSet, VecDeque};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AtomStructure, Axiom, Element};

/// Default node budget for [`find_embedding`].
pub const DEFAULT_EMBED_BUDGET: u64 = 50_000_000;

/// A subset of an algebra closed under every operation and containing the
/// constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    parent: AtomStructure,
    // ascending bitmask order
    elements: Vec<Element>,
}

impl Subalgebra {
    pub fn parent(&self) -> &AtomStructure {
        &self.parent
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// True iff strictly smaller than the parent.
    pub fn is_proper(&self) -> bool {
        (self.elements.len() as u64) < self.parent.element_count().unwrap_or(u64::MAX)
    }

    /// Minimal nonzero elements, in ascending bitmask order.
    pub fn atoms(&self) -> Vec<Element> {
        blocks_of(&self.elements, self.parent.atom_count())
    }

    /// Checks closure under every operation.
    pub fn is_closed(&self) -> bool {
        let alg = &self.parent;
        let has = |x| self.contains(x);
        has(alg.zero())
            && has(alg.one())
            && has(alg.identity())
            && self.elements.iter().all(|&x| {
                has(alg.complement(x))
                    && has(alg.converse(x))
                    && self.elements.iter().all(|&y| {
                        has(alg.join(x, y)) && has(alg.meet(x, y)) && has(alg.compose(x, y))
                    })
            })
    }

    /// The subalgebra as an algebra in its own right. Its atoms are named by
    /// joining the parent atom names with `|`.
    pub fn to_structure(&self) -> AtomStructure {
        let alg = &self.parent;
        let atoms = self.atoms();
        let index_of = |x: Element| atoms.iter().position(|&a| a == x).expect("closed");
        let decompose = |x: Element| -> Element {
            atoms
                .iter()
                .enumerate()
                .filter(|(_, a)| a.is_subset(x))
                .map(|(i, _)| i)
                .collect()
        };
        let names = atoms
            .iter()
            .map(|&a| alg.element_names(a).join("|"))
            .collect();
        let table = atoms
            .iter()
            .map(|&a| {
                atoms
                    .iter()
                    .map(|&b| decompose(alg.compose(a, b)))
                    .collect()
            })
            .collect();
        let converse = atoms.iter().map(|&a| index_of(alg.converse(a))).collect();
        AtomStructure::new(
            format!("{}/sub{}", alg.name(), self.elements.len()),
            names,
            index_of(alg.identity()),
            converse,
            table,
        )
        .expect("induced structure is well formed")
    }

    pub fn to_json(&self) -> SubalgebraJson {
        SubalgebraJson {
            parent: self.parent.name().to_owned(),
            elements: self
                .elements
                .iter()
                .map(|&e| self.parent.element_names(e))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraJson {
    pub parent: String,
    pub elements: Vec<Vec<String>>,
}

/// Partition of the parent atoms induced by a Boolean-closed family.
fn blocks_of(elements: &[Element], atoms: usize) -> Vec<Element> {
    let mut blocks: Vec<Element> = (0..atoms)
        .map(|a| {
            elements
                .iter()
                .filter(|e| e.contains(a))
                .fold(Element::from_bits(u64::MAX), |acc, &e| acc.intersection(e))
        })
        .collect();
    blocks.sort_unstable();
    blocks.dedup();
    blocks
}

/// The least subalgebra containing `generators`, by worklist closure.
pub fn generate(alg: &AtomStructure, generators: &[Element]) -> Subalgebra {
    let mut seen = HashSet::new();
    let mut list = Vec::new();
    let push = |x: Element, seen: &mut HashSet<Element>, list: &mut Vec<Element>| {
        if seen.insert(x) {
            list.push(x);
        }
    };
    for &x in [alg.zero(), alg.one(), alg.identity()]
        .iter()
        .chain(generators)
    {
        push(x, &mut seen, &mut list);
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        push(alg.complement(x), &mut seen, &mut list);
        push(alg.converse(x), &mut seen, &mut list);
        for j in 0..=i {
            let y = list[j];
            push(alg.join(x, y), &mut seen, &mut list);
            push(alg.meet(x, y), &mut seen, &mut list);
            push(alg.compose(x, y), &mut seen, &mut list);
            push(alg.compose(y, x), &mut seen, &mut list);
        }
        i += 1;
    }
    list.sort_unstable();
    Subalgebra {
        parent: alg.clone(),
        elements: list,
    }
}

/// Blocks of the Boolean subalgebra generated by `seeds` and `1'`, by
/// partition refinement of the atoms.
pub fn boolean_closure_blocks(alg: &AtomStructure, seeds: &[Element]) -> Vec<Element> {
    let mut blocks = vec![alg.one()];
    for &s in std::iter::once(&alg.identity()).chain(seeds) {
        blocks = blocks
            .into_iter()
            .flat_map(|b| [b.intersection(s), b.intersection(alg.complement(s))])
            .filter(|b| !b.is_empty())
            .collect();
    }
    blocks.sort_unstable();
    blocks
}

/// The Boolean subalgebra generated by `seeds` and `1'`: every union of
/// blocks, in ascending bitmask order. Its size is `2^blocks`.
pub fn boolean_closure(alg: &AtomStructure, seeds: &[Element]) -> Vec<Element> {
    let blocks = boolean_closure_blocks(alg, seeds);
    assert!(blocks.len() <= 24, "too many blocks to enumerate");
    let mut out: Vec<Element> = (0u64..1 << blocks.len())
        .map(|mask| {
            blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Element::EMPTY, |acc, (_, &b)| acc.union(b))
        })
        .collect();
    out.sort_unstable();
    out
}

pub fn is_proper(sub: &Subalgebra) -> bool {
    sub.is_proper()
}

/// Every subalgebra of `alg`, each reached by adjoining one element at a
/// time to a smaller generated subalgebra. Sorted by size, then elements.
pub fn all_subalgebras(alg: &AtomStructure) -> Vec<Subalgebra> {
    let mut seen: HashSet<Vec<Element>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let bottom = generate(alg, &[]);
    seen.insert(bottom.elements.clone());
    queue.push_back(bottom);
    while let Some(sub) = queue.pop_front() {
        let atoms = sub.atoms();
        for x in alg.elements() {
            if sub.contains(x) {
                continue;
            }
            let mut gens = atoms.clone();
            gens.push(x);
            let bigger = generate(alg, &gens);
            if seen.insert(bigger.elements.clone()) {
                queue.push_back(bigger);
            }
        }
        out.push(sub);
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("source algebra fails {0:?}")]
    SourceNotRelationAlgebra(Vec<Axiom>),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Images of the source atoms; extends additively to the whole algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub images: Vec<Element>,
}

impl Embedding {
    /// Image of an arbitrary source element.
    pub fn apply(&self, x: Element) -> Element {
        x.atoms()
            .fold(Element::EMPTY, |acc, a| acc.union(self.images[a]))
    }

    /// Checks that the images are nonzero and partition the target's top, the
    /// identity goes to the identity, and converse and composition of atoms
    /// are preserved.
    pub fn verify(&self, source: &AtomStructure, target: &AtomStructure) -> bool {
        let n = source.atom_count();
        if self.images.len() != n
            || self
                .images
                .iter()
                .any(|i| i.is_empty() || !i.is_subset(target.one()))
        {
            return false;
        }
        let mut seen = Element::EMPTY;
        for &img in &self.images {
            if !seen.intersection(img).is_empty() {
                return false;
            }
            seen = seen.union(img);
        }
        seen == target.one()
            && self.images[source.identity_atom()] == target.identity()
            && (0..n).all(|a| {
                target.converse(self.images[a]) == self.images[source.converse_atom(a)]
                    && (0..n).all(|b| {
                        target.compose(self.images[a], self.images[b])
                            == self.apply(source.atom_compose(a, b))
                    })
            })
    }

    pub fn to_json(&self, source: &AtomStructure, target: &AtomStructure) -> EmbeddingJson {
        EmbeddingJson {
            map: self
                .images
                .iter()
                .enumerate()
                .map(|(a, &img)| (source.atom_name(a).to_owned(), target.element_names(img)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub map: IndexMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingOutcome {
    Found(Embedding),
    /// The search space was exhausted without success.
    None,
    /// The node budget ran out first.
    Exhausted {
        nodes: u64,
    },
}

pub fn find_embedding(
    source: &AtomStructure,
    target: &AtomStructure,
) -> Result<EmbeddingOutcome, EmbedError> {
    find_embedding_with_budget(source, target, DEFAULT_EMBED_BUDGET)
}

/// Backtracking search for the least embedding, comparing image lists in
/// source atom order and each image by bitmask value.
pub fn find_embedding_with_budget(
    source: &AtomStructure,
    target: &AtomStructure,
    budget: u64,
) -> Result<EmbeddingOutcome, EmbedError> {
    let report = source.check_axioms();
    if !report.all_pass() {
        return Err(EmbedError::SourceNotRelationAlgebra(report.failed()));
    }
    let n = source.atom_count();
    let mut search = Search {
        source,
        target,
        images: vec![Element::EMPTY; n],
        assigned: vec![false; n],
        order: (0..n).filter(|&a| a != source.identity_atom()).collect(),
        nodes: 0,
        budget,
    };
    let id = source.identity_atom();
    search.images[id] = target.identity();
    search.assigned[id] = true;
    if !search.consistent(id) {
        return Ok(EmbeddingOutcome::None);
    }
    let remaining = target.diversity();
    Ok(match search.extend(0, remaining) {
        Some(true) => EmbeddingOutcome::Found(Embedding {
            images: search.images,
        }),
        Some(false) => EmbeddingOutcome::None,
        None => EmbeddingOutcome::Exhausted {
            nodes: search.nodes,
        },
    })
}

struct Search<'a> {
    source: &'a AtomStructure,
    target: &'a AtomStructure,
    images: Vec<Element>,
    assigned: Vec<bool>,
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `Some(found)`, or `None` when the budget runs out.
    fn extend(&mut self, pos: usize, remaining: Element) -> Option<bool> {
        if pos == self.order.len() {
            return Some(remaining.is_empty());
        }
        let atom = self.order[pos];
        let left = self.order.len() - pos;
        if (remaining.count() as usize) < left {
            return Some(false);
        }
        let r = remaining.bits();
        // the last atom takes whatever is left
        let mut s = if left == 1 { r } else { r & r.wrapping_neg() };
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let img = Element::from_bits(s);
            self.images[atom] = img;
            self.assigned[atom] = true;
            if self.consistent(atom) {
                match self.extend(pos + 1, Element::from_bits(r & !s)) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.assigned[atom] = false;
            if left == 1 || s == r {
                return Some(false);
            }
            // next submask of r in ascending order
            s = ((s | !r).wrapping_add(1)) & r;
        }
    }

    /// Constraints among assigned atoms that mention `new`.
    fn consistent(&self, new: usize) -> bool {
        let (src, tgt) = (self.source, self.target);
        let n = src.atom_count();
        let c = src.converse_atom(new);
        if self.assigned[c] && tgt.converse(self.images[new]) != self.images[c] {
            return false;
        }
        let assigned: Vec<usize> = (0..n).filter(|&a| self.assigned[a]).collect();
        let agrees = |a: usize, b: usize, c: usize, product: Element| {
            let img = self.images[c];
            if src.atom_compose(a, b).contains(c) {
                img.is_subset(product)
            } else {
                img.intersection(product).is_empty()
            }
        };
        for &a in &assigned {
            for &b in &assigned {
                let product = tgt.compose(self.images[a], self.images[b]);
                if a == new || b == new {
                    if !assigned.iter().all(|&c| agrees(a, b, c, product)) {
                        return false;
                    }
                } else if !agrees(a, b, new, product) {
                    return false;
                }
            }
        }
        true
    }
}
