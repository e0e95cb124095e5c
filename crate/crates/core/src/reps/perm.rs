use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize).ok_or_else(|| {
                Error::InvalidParameters(format!("image {i} out of range"))
            })?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidParameters(format!("image {i} repeated")));
            }
        }
        Ok(Perm(images))
    }

    /// Build from 1-based cycles, e.g. `&[&[1, 2], &[3, 4]]` for `(12)(34)`.
    pub fn from_cycles(degree: usize, cycles: &[&[u8]]) -> Result<Self> {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p as usize > degree || used[p as usize - 1] {
                    return Err(Error::InvalidParameters(format!(
                        "bad cycle entry {p} for degree {degree}"
                    )));
                }
                used[p as usize - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                images[p as usize - 1] = next - 1;
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Disjoint cycles of length at least 2, 0-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.degree() > 9 { "," } else { "" };
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(sep))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub label: String,
    pub representative: Perm,
    pub size: usize,
    pub element_order: usize,
}

/// A finite permutation group with its elements listed in sorted order.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: BTreeMap<Perm, usize>,
    classes: Vec<ConjugacyClass>,
    class_index: Vec<usize>,
}

impl PermGroup {
    /// Group generated by `gens` (all of the same degree).
    pub fn generated_by(degree: usize, gens: &[Perm]) -> Result<Self> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::DimensionMismatch("generator degree".into()));
        }
        let mut set = BTreeSet::from([Perm::identity(degree)]);
        let mut queue: VecDeque<Perm> = set.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x);
                if set.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_elements(degree, set.into_iter().collect()))
    }

    /// The alternating group on `n` points.
    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Perm> = (3..=n)
            .map(|k| Perm::from_cycles(n, &[&[1, 2, k as u8]]).expect("valid 3-cycle"))
            .collect();
        Self::generated_by(n, &gens).expect("generators share a degree")
    }

    fn from_elements(degree: usize, elements: Vec<Perm>) -> Self {
        let index: BTreeMap<Perm, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut class_index = vec![usize::MAX; elements.len()];
        // (minimal member, size, order) per class, discovered in element order
        // so the minimal member of each class is its first element.
        let mut raw: Vec<(Perm, usize, usize)> = Vec::new();
        for (i, x) in elements.iter().enumerate() {
            if class_index[i] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut size = 0;
            for g in &elements {
                let y = g.compose(x).compose(&g.inverse());
                let j = index[&y];
                if class_index[j] == usize::MAX {
                    class_index[j] = id;
                    size += 1;
                }
            }
            raw.push((x.clone(), size, x.order()));
        }
        // Order by element order, then by minimal member; within one order,
        // classes are lettered A, B, ...
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by(|&a, &b| (raw[a].2, &raw[a].0).cmp(&(raw[b].2, &raw[b].0)));
        let mut relabel = vec![0; raw.len()];
        let mut classes = Vec::with_capacity(raw.len());
        let mut letter = 0u8;
        for (new, &old) in perm.iter().enumerate() {
            let (rep, size, order) = raw[old].clone();
            if new > 0 && raw[perm[new - 1]].2 == order {
                letter += 1;
            } else {
                letter = 0;
            }
            relabel[old] = new;
            classes.push(ConjugacyClass {
                label: format!("{order}{}", (b'A' + letter) as char),
                representative: rep,
                size,
                element_order: order,
            });
        }
        for c in &mut class_index {
            *c = relabel[*c];
        }
        Self {
            degree,
            elements,
            index,
            classes,
            class_index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn class_of(&self, p: &Perm) -> Result<&ConjugacyClass> {
        let i = self
            .index
            .get(p)
            .ok_or_else(|| Error::NotAMember(p.to_string()))?;
        Ok(&self.classes[self.class_index[*i]])
    }

    /// Element bitmask of the subgroup generated by `gens`; needs
    /// `order() <= 128`.
    fn closure_mask(&self, gens: &[usize]) -> u128 {
        let mut mask = 1u128 << self.index[&Perm::identity(self.degree)];
        let mut stack: Vec<usize> = vec![self.index[&Perm::identity(self.degree)]];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.index[&self.elements[g].compose(&self.elements[x])];
                if mask & (1 << y) == 0 {
                    mask |= 1 << y;
                    stack.push(y);
                }
            }
        }
        mask
    }

    /// Every subgroup generated by at most two elements, as element bitmasks.
    pub fn two_generated_subgroups(&self) -> Result<BTreeSet<u128>> {
        if self.order() > 128 {
            return Err(Error::InvalidParameters(format!(
                "subgroup enumeration supports order <= 128, got {}",
                self.order()
            )));
        }
        let n = self.order();
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                out.insert(self.closure_mask(&[a, b]));
            }
        }
        Ok(out)
    }

    pub fn subgroup_orders(&self) -> Result<BTreeSet<usize>> {
        Ok(self
            .two_generated_subgroups()?
            .into_iter()
            .map(|m| m.count_ones() as usize)
            .collect())
    }
}

/// Sizes `|G|/|H|` of transitive `G`-sets, restricted to sizes at least 5.
pub fn transitive_orbit_sizes(group: &PermGroup) -> Result<BTreeSet<usize>> {
    Ok(group
        .subgroup_orders()?
        .into_iter()
        .map(|h| group.order() / h)
        .filter(|&r| r >= 5)
        .collect())
}
