use serde::{Deserialize, Serialize};

use super::{format_terms, BurnsideElement, BurnsideTerm};
use crate::grp::IsoLabel;

/// One `m[G/H]` summand of an expected decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternTerm {
    pub orbit_size: usize,
    pub stab_order: usize,
    pub label: IsoLabel,
    pub multiplicity: usize,
    /// Display name of the stabilizer, e.g. `C2^(1)`.
    pub name: String,
    /// Terms sharing this id have conjugate stabilizers; different ids
    /// have non-conjugate ones.
    pub class_group: usize,
    pub central: Option<bool>,
    pub generator_class_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedPattern {
    pub group_name: String,
    pub group_order: usize,
    pub terms: Vec<PatternTerm>,
}

impl ExpectedPattern {
    pub fn new(group_name: &str, group_order: usize) -> Self {
        ExpectedPattern {
            group_name: group_name.into(),
            group_order,
            terms: Vec::new(),
        }
    }

    /// Appends `multiplicity [G/H]` with `H` of the given order, in a
    /// conjugacy class of its own.
    pub fn term(
        mut self,
        multiplicity: usize,
        name: &str,
        label: IsoLabel,
        stab_order: usize,
    ) -> Self {
        let class_group = self.terms.len();
        self.terms.push(PatternTerm {
            orbit_size: self.group_order / stab_order,
            stab_order,
            label,
            multiplicity,
            name: name.into(),
            class_group,
            central: None,
            generator_class_size: None,
        });
        self
    }

    /// Marks the last term as (non-)central.
    pub fn central(mut self, central: bool) -> Self {
        if let Some(t) = self.terms.last_mut() {
            t.central = Some(central);
        }
        self
    }

    /// Requires the last term's stabilizer generator to have a conjugacy
    /// class of this size.
    pub fn generator_class(mut self, size: usize) -> Self {
        if let Some(t) = self.terms.last_mut() {
            t.generator_class_size = Some(size);
        }
        self
    }

    pub fn total(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.multiplicity * t.orbit_size)
            .sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.total() == crate::bitangent::BITANGENT_COUNT
            && self
                .terms
                .iter()
                .all(|t| t.orbit_size * t.stab_order == self.group_order)
    }

    /// The pattern in its stored order.
    pub fn format(&self) -> String {
        format_terms(
            &self.group_name,
            self.terms.iter().map(|t| (t.name.clone(), t.multiplicity)),
        )
    }

    /// Terms merged by `class_group`.
    fn classes(&self) -> Vec<PatternTerm> {
        let mut out: Vec<PatternTerm> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|c| c.class_group == t.class_group) {
                Some(c) => c.multiplicity += t.multiplicity,
                None => out.push(t.clone()),
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    #[serde(rename = "type")]
    pub type_id: String,
    #[serde(rename = "groupOrder")]
    pub group_order: usize,
    pub computed: Vec<String>,
    pub expected: Vec<String>,
    pub mismatches: Vec<String>,
}

impl MatchReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compatible(e: &PatternTerm, c: &BurnsideTerm) -> bool {
    e.orbit_size == c.orbit_size
        && e.stab_order == c.stab_order
        && e.label == c.label
        && e.multiplicity == c.multiplicity
        && e.central.is_none_or(|z| z == c.central)
        && e.generator_class_size
            .is_none_or(|s| Some(s) == c.generator_class_size)
}

/// Largest partial assignment of expected classes to computed ones.
fn best_assignment(expected: &[PatternTerm], computed: &[BurnsideTerm]) -> Vec<Option<usize>> {
    fn go(
        k: usize,
        expected: &[PatternTerm],
        computed: &[BurnsideTerm],
        used: &mut Vec<bool>,
        cur: &mut Vec<Option<usize>>,
        best: &mut (usize, Vec<Option<usize>>),
    ) {
        let matched = cur.iter().flatten().count();
        if matched + (expected.len() - k) <= best.0 && !best.1.is_empty() {
            return;
        }
        if k == expected.len() {
            if matched > best.0 || best.1.is_empty() {
                *best = (matched, cur.clone());
            }
            return;
        }
        for j in 0..computed.len() {
            if !used[j] && compatible(&expected[k], &computed[j]) {
                used[j] = true;
                cur.push(Some(j));
                go(k + 1, expected, computed, used, cur, best);
                cur.pop();
                used[j] = false;
            }
        }
        cur.push(None);
        go(k + 1, expected, computed, used, cur, best);
        cur.pop();
    }
    let mut best = (0, Vec::new());
    go(
        0,
        expected,
        computed,
        &mut vec![false; computed.len()],
        &mut Vec::new(),
        &mut best,
    );
    best.1
}

fn describe(c: &BurnsideTerm) -> String {
    format!(
        "orbit size {}, stabilizer {} of order {}, multiplicity {}, {}central",
        c.orbit_size,
        c.label,
        c.stab_order,
        c.multiplicity,
        if c.central { "" } else { "non-" }
    )
}

fn differences(e: &PatternTerm, c: &BurnsideTerm) -> Vec<String> {
    let mut out = Vec::new();
    if e.stab_order != c.stab_order {
        out.push(format!(
            "stabilizer order {} vs {}",
            e.stab_order, c.stab_order
        ));
    }
    if e.label != c.label {
        out.push(format!("stabilizer type {} vs {}", e.label, c.label));
    }
    if e.multiplicity != c.multiplicity {
        out.push(format!(
            "multiplicity {} vs {}",
            e.multiplicity, c.multiplicity
        ));
    }
    if e.central.is_some_and(|z| z != c.central) {
        out.push(format!(
            "central {} vs {}",
            e.central.unwrap_or_default(),
            c.central
        ));
    }
    if e.generator_class_size
        .is_some_and(|s| Some(s) != c.generator_class_size)
    {
        out.push(format!(
            "generator class size {:?} vs {:?}",
            e.generator_class_size, c.generator_class_size
        ));
    }
    out
}

fn names_from(
    expected: &[PatternTerm],
    assignment: &[Option<usize>],
    b: &BurnsideElement,
) -> Vec<String> {
    (0..b.terms.len())
        .map(|j| {
            assignment
                .iter()
                .position(|a| *a == Some(j))
                .map(|k| expected[k].name.clone())
                .unwrap_or_else(|| b.terms[j].label.to_string())
        })
        .collect()
}

/// Subgroup name of each term of `b`: the expected name when the term
/// matches a class of `p`, the plain iso label otherwise.
pub fn term_names(b: &BurnsideElement, p: &ExpectedPattern) -> Vec<String> {
    let expected = p.classes();
    names_from(&expected, &best_assignment(&expected, &b.terms), b)
}

/// Compares a computed decomposition with an expected pattern, up to
/// relabeling of conjugacy classes with the same invariants.
pub fn match_expected(type_id: &str, b: &BurnsideElement, p: &ExpectedPattern) -> MatchReport {
    let mut mismatches = Vec::new();
    if b.group_order != p.group_order {
        mismatches.push(format!(
            "group order {} vs expected {}",
            b.group_order, p.group_order
        ));
    }
    if b.total() != crate::bitangent::BITANGENT_COUNT {
        mismatches.push(format!("orbits cover {} bitangents", b.total()));
    }
    let expected = p.classes();
    let assignment = best_assignment(&expected, &b.terms);
    let mut computed_used = vec![false; b.terms.len()];
    for j in assignment.iter().flatten() {
        computed_used[*j] = true;
    }
    let mut spare: Vec<usize> = (0..b.terms.len()).filter(|&j| !computed_used[j]).collect();
    for (e, a) in expected.iter().zip(&assignment) {
        if a.is_some() {
            continue;
        }
        let near = spare
            .iter()
            .position(|&j| b.terms[j].orbit_size == e.orbit_size)
            .or_else(|| (!spare.is_empty()).then_some(0));
        match near {
            Some(pos) => {
                let j = spare.remove(pos);
                mismatches.push(format!(
                    "{}[{}/{}]: computed {} ({})",
                    e.multiplicity,
                    p.group_name,
                    e.name,
                    describe(&b.terms[j]),
                    differences(e, &b.terms[j]).join(", ")
                ));
            }
            None => mismatches.push(format!(
                "{}[{}/{}]: no computed orbit class",
                e.multiplicity, p.group_name, e.name
            )),
        }
    }
    for j in spare {
        mismatches.push(format!(
            "unexpected computed class: {}",
            describe(&b.terms[j])
        ));
    }

    let names = names_from(&expected, &assignment, b);
    let mut computed: Vec<(usize, String, usize)> = b
        .terms
        .iter()
        .zip(names)
        .map(|(t, n)| (t.stab_order, n, t.multiplicity))
        .collect();
    computed.sort();
    MatchReport {
        type_id: type_id.into(),
        group_order: b.group_order,
        computed: computed
            .into_iter()
            .map(|(_, n, m)| format_terms(&p.group_name, std::iter::once((n, m))))
            .collect(),
        expected: p
            .terms
            .iter()
            .map(|t| {
                format_terms(
                    &p.group_name,
                    std::iter::once((t.name.clone(), t.multiplicity)),
                )
            })
            .collect(),
        mismatches,
    }
}
