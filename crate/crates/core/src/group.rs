//! Generic enumeration of small finite groups given by generators:
//! breadth-first closure, conjugacy classes, element orders, power maps and
//! verified class maps between enumerations.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::chars::{ClassInfo, ClassMap, ConjClass, MapKind};
use crate::error::{Error, Result};

/// Default cap on the number of elements an enumeration may materialise.
pub const DEFAULT_ELEMENT_BUDGET: usize = 200_000_000;

/// An element of a finite group with a canonical packed encoding.
pub trait GroupElement: Clone + Send + Sync + 'static {
    /// `self * other`.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// Injective packed encoding; identical elements have identical keys.
    fn key(&self) -> u128;
    /// Size parameter needed to decode a key (qubit count or similar).
    fn rank(&self) -> usize;
    fn from_key(rank: usize, key: u128) -> Self;
    fn identity(rank: usize) -> Self;

    fn is_identity(&self) -> bool {
        self.key() == Self::identity(self.rank()).key()
    }

    fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rank());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    fn order(&self) -> u32 {
        let id = Self::identity(self.rank()).key();
        let mut x = self.clone();
        let mut k = 1;
        while x.key() != id {
            x = x.compose(self);
            k += 1;
        }
        k
    }
}

/// Per-class record in an enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    /// Element index of the representative (minimum key in the class).
    pub rep: usize,
    pub size: u64,
    pub element_order: u32,
    pub members: Vec<u32>,
}

/// A finite group materialised as a sorted list of elements.
pub struct GroupEnumeration<E: GroupElement> {
    name: String,
    rank: usize,
    elements: Vec<E>,
    index: HashMap<u128, u32>,
    generators: Vec<E>,
    class_of: Vec<u32>,
    classes: Vec<ClassRecord>,
    info: Arc<ClassInfo>,
}

impl<E: GroupElement> GroupEnumeration<E> {
    /// Closure of `generators` by breadth-first search, then classes.
    pub fn generate(name: impl Into<String>, rank: usize, generators: Vec<E>, budget: usize) -> Result<Self> {
        let elements = closure(rank, &generators, budget)?;
        Self::from_elements(name, rank, elements, generators)
    }

    /// Builds an enumeration from an element list closed under products.
    /// `generators` must generate the group; they drive class computation.
    pub fn from_elements(
        name: impl Into<String>,
        rank: usize,
        mut elements: Vec<E>,
        generators: Vec<E>,
    ) -> Result<Self> {
        elements.par_sort_unstable_by_key(|e| e.key());
        elements.dedup_by_key(|e| e.key());
        let index: HashMap<u128, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key(), i as u32))
            .collect();
        for g in &generators {
            if !index.contains_key(&g.key()) {
                return Err(Error::InvariantViolated(
                    "generator missing from element list".into(),
                ));
            }
        }
        let class_of = conjugacy_partition(&elements, &index, &generators)?;
        Self::assemble(name.into(), rank, elements, index, generators, class_of)
    }

    /// Rebuilds from a stored element list and class labelling (cache path).
    pub fn from_parts(
        name: impl Into<String>,
        rank: usize,
        keys: &[u128],
        generators: Vec<E>,
        class_of: Vec<u32>,
    ) -> Result<Self> {
        if keys.len() != class_of.len() || keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Cache("element list is not sorted or mismatched".into()));
        }
        let elements: Vec<E> = keys.par_iter().map(|&k| E::from_key(rank, k)).collect();
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        Self::assemble(name.into(), rank, elements, index, generators, class_of)
    }

    fn assemble(
        name: String,
        rank: usize,
        elements: Vec<E>,
        index: HashMap<u128, u32>,
        generators: Vec<E>,
        raw_class: Vec<u32>,
    ) -> Result<Self> {
        let ncls = raw_class.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); ncls];
        for (i, &c) in raw_class.iter().enumerate() {
            members[c as usize].push(i as u32);
        }
        members.retain(|m| !m.is_empty());
        let mut records: Vec<ClassRecord> = members
            .into_par_iter()
            .map(|m| {
                let rep = m[0] as usize; // elements are sorted, members ascending
                let element_order = elements[rep].order();
                ClassRecord {
                    rep,
                    size: m.len() as u64,
                    element_order,
                    members: m,
                }
            })
            .collect();
        records.sort_by_key(|r| (r.size, r.element_order, elements[r.rep].key()));
        let mut class_of = vec![0u32; elements.len()];
        for (c, r) in records.iter().enumerate() {
            for &m in &r.members {
                class_of[m as usize] = c as u32;
            }
        }
        let inverse: Vec<usize> = records
            .iter()
            .map(|r| {
                let inv = elements[r.rep].inverse();
                class_of[index[&inv.key()] as usize] as usize
            })
            .collect();
        let info = ClassInfo::new(
            name.clone(),
            records
                .iter()
                .map(|r| ConjClass {
                    size: r.size,
                    element_order: r.element_order,
                    rep_key: elements[r.rep].key(),
                })
                .collect(),
            inverse,
        );
        Ok(GroupEnumeration {
            name,
            rank,
            elements,
            index,
            generators,
            class_of,
            classes: records,
            info,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(&e.key()).map(|&i| i as usize)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(&e.key())
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    pub fn class_of(&self, e: &E) -> Option<usize> {
        self.index_of(e).map(|i| self.class_of[i] as usize)
    }

    pub fn class_labels(&self) -> &[u32] {
        &self.class_of
    }

    pub fn classes(&self) -> &[ClassRecord] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_rep(&self, c: usize) -> &E {
        &self.elements[self.classes[c].rep]
    }

    pub fn info(&self) -> &Arc<ClassInfo> {
        &self.info
    }

    pub fn keys(&self) -> Vec<u128> {
        self.elements.iter().map(GroupElement::key).collect()
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.info.exponent()
    }

    /// Class of `rep(c)^l`.
    pub fn power_class(&self, c: usize, l: u64) -> usize {
        let p = self.class_rep(c).pow(l);
        self.class_of(&p).expect("group is closed")
    }

    /// Class map of the inclusion `self ≤ big`, checked element by element.
    /// The subgroup of elements satisfying `keep`, which must be closed
    /// under products. Generators are picked greedily from the element list.
    pub fn subgroup(&self, name: impl Into<String>, keep: impl Fn(&E) -> bool) -> Result<Self> {
        let elements: Vec<E> = self.elements.iter().filter(|e| keep(e)).cloned().collect();
        let mut generators: Vec<E> = Vec::new();
        let mut span: HashMap<u128, ()> = HashMap::from([(E::identity(self.rank).key(), ())]);
        for e in &elements {
            if span.len() == elements.len() {
                break;
            }
            if span.contains_key(&e.key()) {
                continue;
            }
            generators.push(e.clone());
            span = closure(self.rank, &generators, elements.len())
                .map_err(|_| Error::InvariantViolated("subgroup predicate is not closed".into()))?
                .iter()
                .map(|g| (g.key(), ()))
                .collect();
        }
        let span = span.len();
        if span != elements.len() {
            return Err(Error::InvariantViolated(format!(
                "subgroup predicate selects {} elements but they generate {span}",
                elements.len()
            )));
        }
        Self::from_elements(name, self.rank, elements, generators)
    }

    pub fn fusion_into(&self, big: &GroupEnumeration<E>) -> Result<ClassMap> {
        let mut image: Vec<Option<usize>> = vec![None; self.class_count()];
        for (i, e) in self.elements.iter().enumerate() {
            let c = big.class_of(e).ok_or_else(|| {
                Error::NotSubgroup(format!("{} is not contained in {}", self.name, big.name))
            })?;
            let slot = &mut image[self.class_of[i] as usize];
            match slot {
                None => *slot = Some(c),
                Some(prev) if *prev != c => {
                    return Err(Error::ClassIncompatible(format!(
                        "a class of {} meets two classes of {}",
                        self.name, big.name
                    )))
                }
                _ => {}
            }
        }
        ClassMap::new(
            MapKind::Fusion,
            self.info.clone(),
            big.info.clone(),
            image.into_iter().map(|c| c.expect("nonempty class")).collect(),
        )
    }

    /// Class map of a homomorphism `f: self → target`, checked for class
    /// compatibility on every element, multiplicativity against every
    /// generator, and surjectivity.
    pub fn quotient_onto<F: GroupElement>(
        &self,
        target: &GroupEnumeration<F>,
        f: impl Fn(&E) -> Result<F> + Sync,
    ) -> Result<ClassMap> {
        let images: Vec<F> = self.elements.par_iter().map(&f).collect::<Result<_>>()?;
        let gens: Vec<F> = self.generators.iter().map(&f).collect::<Result<_>>()?;
        let mut hit = vec![false; target.order()];
        let mut class_image: Vec<Option<usize>> = vec![None; self.class_count()];
        for (i, img) in images.iter().enumerate() {
            let t = target.index_of(img).ok_or_else(|| {
                Error::ClassIncompatible(format!("image outside {}", target.name))
            })?;
            hit[t] = true;
            let tc = target.class_of[t] as usize;
            let slot = &mut class_image[self.class_of[i] as usize];
            match slot {
                None => *slot = Some(tc),
                Some(prev) if *prev != tc => {
                    return Err(Error::ClassIncompatible(format!(
                        "map {} -> {} is not class-compatible",
                        self.name, target.name
                    )))
                }
                _ => {}
            }
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::ClassIncompatible(format!(
                "map {} -> {} is not surjective",
                self.name, target.name
            )));
        }
        let bad = self.elements.par_iter().enumerate().find_any(|(i, e)| {
            self.generators.iter().zip(&gens).any(|(g, fg)| {
                let prod = e.compose(g);
                let j = self.index[&prod.key()] as usize;
                images[j].key() != images[*i].compose(fg).key()
            })
        });
        if bad.is_some() {
            return Err(Error::ClassIncompatible(format!(
                "map {} -> {} is not a homomorphism",
                self.name, target.name
            )));
        }
        ClassMap::new(
            MapKind::Quotient,
            self.info.clone(),
            target.info.clone(),
            class_image.into_iter().map(|c| c.expect("nonempty class")).collect(),
        )
    }
}

/// Breadth-first closure of a generating set, with parallel frontier
/// expansion. Output order is unspecified; callers sort by key.
pub fn closure<E: GroupElement>(rank: usize, generators: &[E], budget: usize) -> Result<Vec<E>> {
    let id = E::identity(rank);
    let mut seen: HashMap<u128, ()> = HashMap::new();
    seen.insert(id.key(), ());
    let mut all = vec![id.clone()];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let candidates: Vec<E> = frontier
            .par_iter()
            .flat_map_iter(|e| generators.iter().map(move |g| e.compose(g)))
            .collect();
        let mut next = Vec::new();
        for c in candidates {
            if seen.insert(c.key(), ()).is_none() {
                if all.len() >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                all.push(c.clone());
                next.push(c);
            }
        }
        frontier = next;
    }
    Ok(all)
}

/// Union-find of elements under conjugation by each generator.
fn conjugacy_partition<E: GroupElement>(
    elements: &[E],
    index: &HashMap<u128, u32>,
    generators: &[E],
) -> Result<Vec<u32>> {
    let inverses: Vec<E> = generators.iter().map(GroupElement::inverse).collect();
    let images: Vec<Vec<u32>> = elements
        .par_iter()
        .map(|x| {
            generators
                .iter()
                .zip(&inverses)
                .map(|(g, gi)| {
                    let y = g.compose(x).compose(gi);
                    index.get(&y.key()).copied().ok_or_else(|| {
                        Error::InvariantViolated("element set is not closed under conjugation".into())
                    })
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    let mut parent: Vec<u32> = (0..elements.len() as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let p = parent[x as usize];
            parent[x as usize] = parent[p as usize];
            x = p;
        }
        x
    }
    for (i, imgs) in images.iter().enumerate() {
        for &j in imgs {
            let a = find(&mut parent, i as u32);
            let b = find(&mut parent, j);
            if a != b {
                // Keep the smaller index as root so roots are class minima.
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    Ok((0..elements.len() as u32).map(|i| find(&mut parent, i)).collect())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Permutations of up to 8 points packed 4 bits per image.
    #[derive(Clone, Debug, PartialEq, Eq)]
    pub(crate) struct Perm(pub Vec<u8>);

    impl GroupElement for Perm {
        fn compose(&self, other: &Self) -> Self {
            // (self * other)(i) = self(other(i))
            Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
        }
        fn inverse(&self) -> Self {
            let mut inv = vec![0u8; self.0.len()];
            for (i, &j) in self.0.iter().enumerate() {
                inv[j as usize] = i as u8;
            }
            Perm(inv)
        }
        fn key(&self) -> u128 {
            self.0.iter().rev().fold(0u128, |acc, &x| (acc << 4) | x as u128)
        }
        fn rank(&self) -> usize {
            self.0.len()
        }
        fn from_key(rank: usize, key: u128) -> Self {
            Perm((0..rank).map(|i| ((key >> (4 * i)) & 15) as u8).collect())
        }
        fn identity(rank: usize) -> Self {
            Perm((0..rank as u8).collect())
        }
    }

    pub(crate) fn symmetric(n: usize) -> GroupEnumeration<Perm> {
        let mut cycle: Vec<u8> = (1..n as u8).collect();
        cycle.push(0);
        let mut swap: Vec<u8> = (0..n as u8).collect();
        swap.swap(0, 1);
        GroupEnumeration::generate(format!("S{n}"), n, vec![Perm(cycle), Perm(swap)], 1000)
            .unwrap()
    }

    pub(crate) fn cyclic(n: usize) -> GroupEnumeration<Perm> {
        let mut cycle: Vec<u8> = (1..n as u8).collect();
        cycle.push(0);
        GroupEnumeration::generate(format!("Z{n}"), n, vec![Perm(cycle)], 1000).unwrap()
    }

    #[test]
    fn s4_classes() {
        let g = symmetric(4);
        assert_eq!(g.order(), 24);
        let sizes: Vec<u64> = g.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let orders: Vec<u32> = g.classes().iter().map(|c| c.element_order).collect();
        assert_eq!(orders, vec![1, 2, 2, 4, 3]);
        assert_eq!(g.exponent(), 12);
        for (c, r) in g.classes().iter().enumerate() {
            assert_eq!(g.info().centralizer_order(c) * r.size, 24);
        }
    }

    #[test]
    fn power_maps_and_inverses() {
        let g = symmetric(4);
        // fourth powers of 4-cycles are trivial, squares are double transpositions
        let four = g.classes().iter().position(|c| c.element_order == 4).unwrap();
        assert_eq!(g.power_class(four, 4), 0);
        assert_eq!(g.classes()[g.power_class(four, 2)].size, 3);
        for c in 0..g.class_count() {
            assert_eq!(g.info().inverse_class(c), c);
        }
        let z5 = cyclic(5);
        assert_eq!(z5.class_count(), 5);
        assert_ne!(z5.info().inverse_class(1), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let mut cycle: Vec<u8> = (1..6).collect();
        cycle.push(0);
        let mut swap: Vec<u8> = (0..6).collect();
        swap.swap(0, 1);
        let r = GroupEnumeration::generate("S6", 6, vec![Perm(cycle), Perm(swap)], 100);
        assert!(matches!(r, Err(Error::BudgetExceeded { budget: 100 })));
    }

    #[test]
    fn fusion_and_quotient_maps() {
        let s4 = symmetric(4);
        let a4 = GroupEnumeration::generate(
            "A4",
            4,
            vec![Perm(vec![1, 2, 0, 3]), Perm(vec![1, 0, 3, 2])],
            100,
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
        let fusion = a4.fusion_into(&s4).unwrap();
        assert_eq!(fusion.image().len(), 4);
        assert!(s4.fusion_into(&a4).is_err());

        let z2 = cyclic(2);
        let sign = |p: &Perm| -> Result<Perm> {
            let mut inversions = 0;
            for i in 0..p.0.len() {
                for j in i + 1..p.0.len() {
                    if p.0[i] > p.0[j] {
                        inversions += 1;
                    }
                }
            }
            Ok(if inversions % 2 == 0 { Perm(vec![0, 1]) } else { Perm(vec![1, 0]) })
        };
        let q = s4.quotient_onto(&z2, sign).unwrap();
        assert_eq!(q.kernel_classes().len(), 3);
        // Not a homomorphism: everything to the transposition.
        assert!(s4.quotient_onto(&z2, |_| Ok(Perm(vec![1, 0]))).is_err());
    }

    #[test]
    fn rebuild_from_parts() {
        let g = symmetric(4);
        let h = GroupEnumeration::<Perm>::from_parts(
            "S4",
            4,
            &g.keys(),
            g.generators().to_vec(),
            g.class_labels().to_vec(),
        )
        .unwrap();
        assert_eq!(h.class_labels(), g.class_labels());
        assert_eq!(h.info().classes(), g.info().classes());
    }
}
