//! Ideals of a finite ring, the lattice above a given ideal, prime and
//! maximal tests, minimal primes, and quotient rings.

use std::collections::{HashSet, VecDeque};

use crate::error::Error;
use crate::ring::{ElementId, FiniteRing};

/// Default bound on the number of ideals a lattice search may discover.
pub const DEFAULT_LATTICE_BUDGET: usize = 100_000;

/// An ideal stored as its element set. Equality ignores generators.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring_order: usize,
    members: Vec<bool>,
    elements: Vec<ElementId>,
    generators: Vec<ElementId>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring_order == other.ring_order && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Ideal {
    fn from_members(members: Vec<bool>, generators: Vec<ElementId>) -> Ideal {
        let elements = members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| ElementId::from(i))
            .collect();
        Ideal {
            ring_order: members.len(),
            members,
            elements,
            generators,
        }
    }

    /// Sorted element list.
    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ring_order(&self) -> usize {
        self.ring_order
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.members[x.index()]
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn element_names(&self, r: &FiniteRing) -> Vec<String> {
        self.elements.iter().map(|&x| r.name(x).to_string()).collect()
    }
}

/// Smallest ideal containing `base ∪ extra`: `base + R·extra`.
///
/// `base` must already be closed (an ideal's member set, or just `{0}`).
fn close_over(r: &FiniteRing, mut members: Vec<bool>, extra: &[ElementId]) -> Vec<bool> {
    let mut step = vec![false; r.order()];
    for &s in extra {
        for y in r.elements() {
            step[r.mul(s, y).index()] = true;
        }
    }
    let steps: Vec<ElementId> = step
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| ElementId::from(i))
        .collect();

    // Additive closure: in a finite group adding generators from every
    // member reaches the whole subgroup.
    let mut queue: VecDeque<ElementId> = members
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| ElementId::from(i))
        .collect();
    while let Some(e) = queue.pop_front() {
        for &t in &steps {
            let s = r.add(e, t);
            if !members[s.index()] {
                members[s.index()] = true;
                queue.push_back(s);
            }
        }
    }
    members
}

/// Ideal generated by `s`: the closure of `{0} ∪ s` under addition and
/// multiplication by ring elements.
pub fn generate_ideal(r: &FiniteRing, s: &[ElementId]) -> Ideal {
    let mut members = vec![false; r.order()];
    members[r.zero().index()] = true;
    let mut generators = s.to_vec();
    generators.sort();
    generators.dedup();
    let members = close_over(r, members, &generators);
    Ideal::from_members(members, generators)
}

/// `i + (x)`, keeping `i`'s generators and adding `x`.
fn extend(r: &FiniteRing, i: &Ideal, x: ElementId) -> Ideal {
    let members = close_over(r, i.members.clone(), &[x]);
    let mut generators = i.generators.clone();
    generators.push(x);
    generators.sort();
    generators.dedup();
    Ideal::from_members(members, generators)
}

/// Whole ring as an ideal, generated by 1.
pub fn unit_ideal(r: &FiniteRing) -> Ideal {
    Ideal::from_members(vec![true; r.order()], vec![r.one()])
}

pub fn zero_ideal(r: &FiniteRing) -> Ideal {
    generate_ideal(r, &[])
}

pub fn is_proper(i: &Ideal) -> bool {
    i.len() < i.ring_order
}

/// Properness via the unit criterion: an ideal is proper iff it holds no unit.
pub fn contains_unit(r: &FiniteRing, i: &Ideal) -> Option<ElementId> {
    i.elements().iter().copied().find(|&x| r.is_unit(x))
}

pub fn is_prime_ideal(r: &FiniteRing, i: &Ideal) -> bool {
    if !is_proper(i) {
        return false;
    }
    let outside: Vec<ElementId> = r.elements().filter(|&x| !i.contains(x)).collect();
    outside
        .iter()
        .all(|&a| outside.iter().all(|&b| !i.contains(r.mul(a, b))))
}

/// Maximal iff proper and adjoining any outside element yields the whole
/// ring, i.e. the lattice above `i` is exactly `{i, R}`.
pub fn is_maximal_ideal(r: &FiniteRing, i: &Ideal) -> bool {
    is_proper(i)
        && r
            .elements()
            .filter(|&x| !i.contains(x))
            .all(|x| !is_proper(&extend(r, i, x)))
}

/// Every ideal `J` with `i ⊆ J ⊆ R`, found breadth-first by adjoining one
/// element at a time. Results are sorted by size, then by element list.
pub fn ideals_containing(r: &FiniteRing, i: &Ideal, budget: usize) -> Result<Vec<Ideal>, Error> {
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut found = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(i.members.clone());
    queue.push_back(i.clone());
    while let Some(j) = queue.pop_front() {
        for x in r.elements().filter(|&x| !j.contains(x)) {
            let next = extend(r, &j, x);
            if seen.insert(next.members.clone()) {
                if seen.len() > budget {
                    return Err(Error::LatticeBudgetExceeded { budget });
                }
                queue.push_back(next);
            }
        }
        found.push(j);
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(found)
}

/// Inclusion-minimal prime ideals containing `i`. Empty iff `i` is improper.
pub fn minimal_primes_over(r: &FiniteRing, i: &Ideal, budget: usize) -> Result<Vec<Ideal>, Error> {
    let primes: Vec<Ideal> = ideals_containing(r, i, budget)?
        .into_iter()
        .filter(|p| is_prime_ideal(r, p))
        .collect();
    let minimal = primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q.len() < p.len() && q.is_subset_of(p)))
        .cloned()
        .collect();
    Ok(minimal)
}

/// `R/I` together with the projection `R → R/I`.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub quotient: FiniteRing,
    /// Source element → index of its coset in `quotient`.
    pub projection: Vec<ElementId>,
    /// Coset index → least source element of the coset.
    pub representatives: Vec<ElementId>,
    pub kernel: Ideal,
}

impl QuotientRing {
    pub fn project(&self, x: ElementId) -> ElementId {
        self.projection[x.index()]
    }

    /// Source elements making up coset `c`.
    pub fn coset(&self, c: ElementId) -> Vec<ElementId> {
        self.projection
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == c)
            .map(|(i, _)| ElementId::from(i))
            .collect()
    }
}

/// Builds `R/I`. Each coset is represented by its least element and named
/// `"<rep>+I"`.
pub fn quotient_ring(r: &FiniteRing, i: &Ideal) -> Result<QuotientRing, Error> {
    if !is_proper(i) {
        return Err(Error::ImproperIdealQuotient);
    }
    let rep_of: Vec<ElementId> = r
        .elements()
        .map(|x| {
            i.elements()
                .iter()
                .map(|&k| r.add(x, k))
                .min()
                .expect("ideal contains zero")
        })
        .collect();
    let mut representatives: Vec<ElementId> = rep_of.clone();
    representatives.sort();
    representatives.dedup();
    let mut coset_index = vec![ElementId(0); r.order()];
    for (c, rep) in representatives.iter().enumerate() {
        coset_index[rep.index()] = ElementId::from(c);
    }
    let projection: Vec<ElementId> = rep_of.iter().map(|rep| coset_index[rep.index()]).collect();

    let mut add = Vec::with_capacity(representatives.len().pow(2));
    let mut mul = Vec::with_capacity(representatives.len().pow(2));
    for &a in &representatives {
        for &b in &representatives {
            add.push(projection[r.add(a, b).index()]);
            mul.push(projection[r.mul(a, b).index()]);
        }
    }
    let names = representatives
        .iter()
        .map(|&rep| format!("{}+I", r.name(rep)))
        .collect();
    let label = format!("{} / ({})", r.label(), i.element_names(r).join(","));
    let quotient = FiniteRing::from_tables(
        label,
        names,
        add,
        mul,
        projection[r.zero().index()],
        projection[r.one().index()],
    )?;
    Ok(QuotientRing {
        quotient,
        projection,
        representatives,
        kernel: i.clone(),
    })
}
