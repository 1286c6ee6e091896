//! Finite subgroups of PGL(3, C) built by closure from generators, with the
//! usual table-driven queries: orders, center, conjugacy, stabilizers.

mod transform;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::projgeom::{act_on_line, ProjLine, DEFAULT_MATCH_TOL};
pub use transform::{Mat3, ProjTransform};

pub const DEFAULT_CAP: usize = 200;

/// Two candidate matches closer than this multiple of the tolerance make
/// element identification ambiguous.
const SEPARATION: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("matrix is singular or has a vanishing canonical determinant")]
    Singular,
    #[error("matrix has a non-finite entry")]
    NonFinite,
    #[error("closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("element match at distance {distance:e} is ambiguous for tolerance {tol:e}")]
    AmbiguousMatch { distance: f64, tol: f64 },
    #[error("element set is not closed under multiplication")]
    NotClosed,
}

/// Finds the element within `tol` of `x`, or `None` when every element is
/// at least `SEPARATION * tol` away.
fn locate(
    elements: &[ProjTransform],
    x: &ProjTransform,
    tol: f64,
) -> Result<Option<usize>, GroupError> {
    let mut best: Option<(usize, f64)> = None;
    let mut near = 0;
    for (i, e) in elements.iter().enumerate() {
        let d = e.distance(x);
        if d < SEPARATION * tol {
            near += 1;
        }
        if best.is_none_or(|(_, b)| d < b) {
            best = Some((i, d));
        }
    }
    match best {
        Some((i, d)) if d < tol => {
            if near > 1 {
                Err(GroupError::AmbiguousMatch { distance: d, tol })
            } else {
                Ok(Some(i))
            }
        }
        Some((_, d)) if d < SEPARATION * tol => {
            Err(GroupError::AmbiguousMatch { distance: d, tol })
        }
        _ => Ok(None),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteProjGroup {
    elements: Vec<ProjTransform>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    match_tol: f64,
}

impl FiniteProjGroup {
    /// Breadth-first closure of `gens` under right multiplication.
    pub fn closure(gens: &[ProjTransform], cap: usize, match_tol: f64) -> Result<Self, GroupError> {
        let mut elements = vec![ProjTransform::identity()];
        let mut queue = VecDeque::from([0usize]);
        let mut generators = Vec::with_capacity(gens.len());
        for g in gens {
            match locate(&elements, g, match_tol)? {
                Some(i) => generators.push(i),
                None => {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    elements.push(g.clone());
                    generators.push(elements.len() - 1);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = elements[i].compose(g);
                if locate(&elements, &p, match_tol)?.is_none() {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    elements.push(p);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Self::from_elements(elements, generators, match_tol)
    }

    fn from_elements(
        elements: Vec<ProjTransform>,
        generators: Vec<usize>,
        match_tol: f64,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        let mut mul = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = elements[i].compose(&elements[j]);
                mul[i][j] = locate(&elements, &p, match_tol)?.ok_or(GroupError::NotClosed)?;
            }
        }
        let inv = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| mul[i][j] == 0)
                    .ok_or(GroupError::NotClosed)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteProjGroup {
            elements,
            mul,
            inv,
            generators,
            match_tol,
        })
    }

    pub fn trivial() -> Self {
        Self::closure(&[], 1, DEFAULT_MATCH_TOL).expect("the trivial group closes")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjTransform] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ProjTransform {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn match_tol(&self) -> f64 {
        self.match_tol
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// `g h g⁻¹` by index.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul[self.mul[g][h]][self.inv[g]]
    }

    pub fn index_of(&self, x: &ProjTransform) -> Result<Option<usize>, GroupError> {
        locate(&self.elements, x, self.match_tol)
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul[x][i];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.mul[i][j] == self.mul[j][i]))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order();
        Subgroup {
            members: (0..n)
                .filter(|&z| (0..n).all(|g| self.mul[z][g] == self.mul[g][z]))
                .collect(),
        }
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn class_size(&self, x: usize) -> usize {
        let mut class: Vec<usize> = (0..self.order()).map(|g| self.conj(g, x)).collect();
        class.sort_unstable();
        class.dedup();
        class.len()
    }

    /// Smallest subgroup containing the given elements.
    pub fn generated_by(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![0usize];
        let mut present = vec![false; self.order()];
        present[0] = true;
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in gens {
                let y = self.mul[x][g];
                if !present[y] {
                    present[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let set: Vec<bool> = (0..self.order()).map(|i| members.contains(&i)).collect();
        members.contains(&0)
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| set[self.mul[a][b]]))
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut members: Vec<usize> = h.members.iter().map(|&x| self.conj(g, x)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn subgroups_conjugate(&self, a: &Subgroup, b: &Subgroup) -> bool {
        a.order() == b.order() && (0..self.order()).any(|g| self.conjugate_subgroup(a, g) == *b)
    }

    /// Elements whose action fixes the line within the group's tolerance.
    pub fn stabilizer(&self, line: &ProjLine) -> Result<Subgroup, GroupError> {
        let tol = self.match_tol;
        let mut members = Vec::new();
        for (i, g) in self.elements.iter().enumerate() {
            let d = act_on_line(g, line).distance(line);
            if d < tol {
                members.push(i);
            } else if d < SEPARATION * tol {
                return Err(GroupError::AmbiguousMatch { distance: d, tol });
            }
        }
        if !self.is_subgroup(&members) {
            return Err(GroupError::NotClosed);
        }
        Ok(Subgroup { members })
    }

    /// Distinct subgroups of the given order generated by at most two elements.
    pub fn subgroups_of_order(&self, order: usize) -> Vec<Subgroup> {
        let n = self.order();
        let mut found: Vec<Subgroup> = Vec::new();
        for i in 0..n {
            if !order.is_multiple_of(self.element_order(i)) {
                continue;
            }
            for j in i..n {
                let h = self.generated_by(&[i, j]);
                if h.order() == order && !found.contains(&h) {
                    found.push(h);
                }
            }
        }
        found.sort_by(|a, b| a.members.cmp(&b.members));
        found
    }

    /// The subgroup as a group in its own right; element `k` of the result
    /// is parent element `h.members()[k]`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteProjGroup {
        let pos = |x: usize| h.members.binary_search(&x).expect("subgroup is closed");
        let elements = h
            .members
            .iter()
            .map(|&i| self.elements[i].clone())
            .collect();
        let mul = h
            .members
            .iter()
            .map(|&a| h.members.iter().map(|&b| pos(self.mul[a][b])).collect())
            .collect();
        let inv = h.members.iter().map(|&a| pos(self.inv[a])).collect();
        let generators = (1..h.order()).collect();
        FiniteProjGroup {
            elements,
            mul,
            inv,
            generators,
            match_tol: self.match_tol,
        }
    }

    pub fn iso_label(&self, h: &Subgroup) -> IsoLabel {
        let n = h.order();
        let orders: Vec<usize> = h.members.iter().map(|&x| self.element_order(x)).collect();
        let abelian = h
            .members
            .iter()
            .all(|&a| h.members.iter().all(|&b| self.mul[a][b] == self.mul[b][a]));
        if orders.contains(&n) {
            IsoLabel::Cyclic(n)
        } else if n == 4 {
            IsoLabel::Klein4
        } else if n == 6 && !abelian {
            IsoLabel::S3
        } else if n == 8 && !abelian && orders.iter().filter(|&&o| o == 4).count() == 2 {
            IsoLabel::D8
        } else {
            IsoLabel::Other { order: n, abelian }
        }
    }

    pub fn is_central(&self, h: &Subgroup) -> bool {
        let z = self.center();
        h.members.iter().all(|x| z.members.binary_search(x).is_ok())
    }
}

/// A subgroup given by the sorted indices of its members in the parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn from_members(
        group: &FiniteProjGroup,
        mut members: Vec<usize>,
    ) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m >= group.order()) || !group.is_subgroup(&members) {
            return Err(GroupError::NotClosed);
        }
        Ok(Subgroup { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsoLabel {
    Cyclic(usize),
    Klein4,
    S3,
    D8,
    Other { order: usize, abelian: bool },
}

impl fmt::Display for IsoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoLabel::Cyclic(1) => write!(f, "e"),
            IsoLabel::Cyclic(n) => write!(f, "C{n}"),
            IsoLabel::Klein4 => write!(f, "K4"),
            IsoLabel::S3 => write!(f, "S3"),
            IsoLabel::D8 => write!(f, "D8"),
            IsoLabel::Other {
                order,
                abelian: true,
            } => write!(f, "Ab{order}"),
            IsoLabel::Other {
                order,
                abelian: false,
            } => write!(f, "G{order}"),
        }
    }
}
