//! Orbits of a projective group on a bitangent set, their Burnside
//! decomposition, restriction to subgroups and comparison with expected
//! decompositions.

mod pattern;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitangent::BitangentSet;
use crate::grp::{FiniteProjGroup, GroupError, IsoLabel, Subgroup};
use crate::projgeom::act_on_line;

pub use pattern::{match_expected, term_names, ExpectedPattern, MatchReport, PatternTerm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EquivariantError {
    #[error(
        "group element {element} maps bitangent {line} outside the set (nearest at {distance:e})"
    )]
    NotInvariant {
        element: usize,
        line: usize,
        distance: f64,
    },
    #[error("group element {element} does not permute the bitangents bijectively")]
    NotBijective { element: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `perm[g][i]` is the index of the image of bitangent `i` under element `g`.
pub fn permutation_table(
    group: &FiniteProjGroup,
    set: &BitangentSet,
) -> Result<Vec<Vec<usize>>, EquivariantError> {
    let tol = group.match_tol();
    group
        .elements()
        .iter()
        .enumerate()
        .map(|(g, elem)| {
            let mut perm = Vec::with_capacity(set.len());
            let mut seen = vec![false; set.len()];
            for (i, b) in set.items.iter().enumerate() {
                let image = act_on_line(elem, &b.line);
                let j = set
                    .find(&image, tol)
                    .ok_or_else(|| EquivariantError::NotInvariant {
                        element: g,
                        line: i,
                        distance: set
                            .items
                            .iter()
                            .map(|c| c.line.distance(&image))
                            .fold(f64::INFINITY, f64::min),
                    })?;
                if std::mem::replace(&mut seen[j], true) {
                    return Err(EquivariantError::NotBijective { element: g });
                }
                perm.push(j);
            }
            Ok(perm)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub members: Vec<usize>,
    pub representative: usize,
    /// Stabilizer of the representative.
    pub stabilizer: Subgroup,
    pub label: IsoLabel,
    /// Index of the stabilizer's conjugacy class among `class_reps`.
    pub stab_class: usize,
    pub central: bool,
    pub real_count: usize,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub group_order: usize,
    pub orbits: Vec<Orbit>,
    /// One stabilizer per conjugacy class met, indexed by `stab_class`.
    pub class_reps: Vec<Subgroup>,
}

pub fn compute_orbits(
    group: &FiniteProjGroup,
    set: &BitangentSet,
) -> Result<OrbitDecomposition, EquivariantError> {
    let perm = permutation_table(group, set)?;
    let mut assigned = vec![false; set.len()];
    let mut orbits = Vec::new();
    let mut class_reps: Vec<Subgroup> = Vec::new();
    for rep in 0..set.len() {
        if assigned[rep] {
            continue;
        }
        let mut members: Vec<usize> = perm.iter().map(|p| p[rep]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            assigned[m] = true;
        }
        let fixing = (0..group.order())
            .filter(|&g| perm[g][rep] == rep)
            .collect();
        let stabilizer = Subgroup::from_members(group, fixing)?;
        let stab_class = match class_reps
            .iter()
            .position(|c| group.subgroups_conjugate(c, &stabilizer))
        {
            Some(k) => k,
            None => {
                class_reps.push(stabilizer.clone());
                class_reps.len() - 1
            }
        };
        orbits.push(Orbit {
            real_count: members.iter().filter(|&&m| set.items[m].is_real).count(),
            label: group.iso_label(&stabilizer),
            central: group.is_central(&stabilizer),
            members,
            representative: rep,
            stabilizer,
            stab_class,
        });
    }
    Ok(OrbitDecomposition {
        group_order: group.order(),
        orbits,
        class_reps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BurnsideTerm {
    pub stab_class: usize,
    pub orbit_size: usize,
    pub stab_order: usize,
    pub label: IsoLabel,
    pub multiplicity: usize,
    pub central: bool,
    /// Conjugacy class size of a generator, for cyclic stabilizers.
    pub generator_class_size: Option<usize>,
    pub representative: Subgroup,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BurnsideElement {
    pub group_order: usize,
    pub terms: Vec<BurnsideTerm>,
}

impl BurnsideElement {
    pub fn total(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.multiplicity * t.orbit_size)
            .sum()
    }
}

pub fn to_burnside(group: &FiniteProjGroup, d: &OrbitDecomposition) -> BurnsideElement {
    let mut terms: Vec<BurnsideTerm> = Vec::new();
    for o in &d.orbits {
        if let Some(t) = terms.iter_mut().find(|t| t.stab_class == o.stab_class) {
            t.multiplicity += 1;
            continue;
        }
        let h = &d.class_reps[o.stab_class];
        let generator_class_size = h
            .members()
            .iter()
            .find(|&&x| group.element_order(x) == h.order())
            .map(|&x| group.class_size(x));
        terms.push(BurnsideTerm {
            stab_class: o.stab_class,
            orbit_size: o.size(),
            stab_order: h.order(),
            label: o.label,
            multiplicity: 1,
            central: o.central,
            generator_class_size,
            representative: h.clone(),
        });
    }
    terms.sort_by_key(|t| t.stab_class);
    BurnsideElement {
        group_order: d.group_order,
        terms,
    }
}

/// Formats as `3[C9/e] + [C9/C9]`, ordered by stabilizer order and then
/// name. `name_of` supplies the subgroup names.
pub fn format_burnside(
    b: &BurnsideElement,
    group_name: &str,
    name_of: impl Fn(&BurnsideTerm) -> String,
) -> String {
    let mut parts: Vec<(usize, String, usize)> = b
        .terms
        .iter()
        .map(|t| (t.stab_order, name_of(t), t.multiplicity))
        .collect();
    parts.sort();
    format_terms(group_name, parts.into_iter().map(|(_, name, m)| (name, m)))
}

pub(crate) fn format_terms(
    group_name: &str,
    terms: impl Iterator<Item = (String, usize)>,
) -> String {
    terms
        .map(|(name, m)| match m {
            1 => format!("[{group_name}/{name}]"),
            m => format!("{m}[{group_name}/{name}]"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Plain iso-label names.
pub fn label_name(t: &BurnsideTerm) -> String {
    t.label.to_string()
}

/// Orbits of a subgroup acting on the same set. The decomposition is in the
/// indexing of `group.subgroup_as_group(h)`, which is returned alongside.
pub fn restrict_action(
    group: &FiniteProjGroup,
    h: &Subgroup,
    set: &BitangentSet,
) -> Result<(FiniteProjGroup, OrbitDecomposition), EquivariantError> {
    let sub = group.subgroup_as_group(h);
    let d = compute_orbits(&sub, set)?;
    Ok((sub, d))
}

/// Whether two decompositions under the same group agree: the terms pair
/// up with conjugate stabilizers and equal multiplicities.
pub fn same_decomposition(
    group: &FiniteProjGroup,
    a: &BurnsideElement,
    b: &BurnsideElement,
) -> bool {
    if a.group_order != b.group_order || a.terms.len() != b.terms.len() {
        return false;
    }
    let mut used = vec![false; b.terms.len()];
    a.terms.iter().all(|s| {
        let hit = b.terms.iter().enumerate().find(|(k, t)| {
            !used[*k]
                && t.multiplicity == s.multiplicity
                && group.subgroups_conjugate(&s.representative, &t.representative)
        });
        match hit {
            Some((k, _)) => {
                used[k] = true;
                true
            }
            None => false,
        }
    })
}

/// True when every element agrees with the first one.
pub fn all_equal(group: &FiniteProjGroup, items: &[BurnsideElement]) -> bool {
    items
        .windows(2)
        .all(|w| same_decomposition(group, &w[0], &w[1]))
}
