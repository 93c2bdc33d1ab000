//! Automorphism groups read off the ground set of a self-instance, with dihedral
//! structure checked through generator relations.
//!
//! Composition: `(p∘q)_i = p[q[i]]`, the right factor acts first.

use crate::cost::GroundSummary;
use crate::encoding::IntegerString;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A bijection of `0..N`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::input(format!("{images:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    /// `self^k` by repeated composition.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Permutation::identity(self.len()), |acc, _| compose_unchecked(self, &acc))
    }

    /// Smallest `k ≥ 1` with `self^k = e`.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = compose_unchecked(self, &p);
            k += 1;
        }
        k
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().all(|&p| p < 10) { "" } else { " " };
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "π({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let is: IntegerString = s.parse()?;
        Permutation::new(is.entries().iter().map(|&e| e as usize).collect())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

fn compose_unchecked(p: &Permutation, q: &Permutation) -> Permutation {
    Permutation(q.0.iter().map(|&qi| p.0[qi]).collect())
}

/// `p∘q`: apply `q`, then `p`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.len() != q.len() {
        return Err(Error::input(format!("cannot compose permutations of sizes {} and {}", p.len(), q.len())));
    }
    Ok(compose_unchecked(p, q))
}

/// Zero-cost minimizers as permutations.
pub fn decode_ground_strings(summary: &GroundSummary) -> Result<Vec<Permutation>> {
    if !summary.is_isomorphic {
        return Err(Error::contract(format!("graphs not isomorphic: minimum cost is {}", summary.min_cost)));
    }
    summary
        .minimizers
        .iter()
        .map(|s| s.as_permutation().map(Permutation).ok_or_else(|| Error::contract(format!("zero-cost string {s} is not a permutation"))))
        .collect()
}

/// Why a set fails to be a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureViolation {
    Empty,
    SizeMismatch,
    MissingIdentity,
    MissingInverse(Permutation),
    /// `p∘q` is not in the set.
    NotClosed(Permutation, Permutation),
}

/// `Ok(())` when `elems` is a group under composition, otherwise a certificate.
pub fn verify_closure(elems: &[Permutation]) -> std::result::Result<(), ClosureViolation> {
    let first = elems.first().ok_or(ClosureViolation::Empty)?;
    if elems.iter().any(|p| p.len() != first.len()) {
        return Err(ClosureViolation::SizeMismatch);
    }
    let set: BTreeSet<&Permutation> = elems.iter().collect();
    for p in elems {
        for q in elems {
            if !set.contains(&compose_unchecked(p, q)) {
                return Err(ClosureViolation::NotClosed(p.clone(), q.clone()));
            }
        }
    }
    if !set.contains(&Permutation::identity(first.len())) {
        return Err(ClosureViolation::MissingIdentity);
    }
    if let Some(p) = elems.iter().find(|p| !set.contains(&p.inverse())) {
        return Err(ClosureViolation::MissingInverse(p.clone()));
    }
    Ok(())
}

/// Outcome of each dihedral relation `αⁿ = e`, `β² = e`, `αβ = βα^{n−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DihedralRelations {
    pub alpha_pow_n_is_identity: bool,
    pub beta_squared_is_identity: bool,
    pub alpha_beta_eq_beta_alpha_pow_n_minus_1: bool,
}

impl DihedralRelations {
    pub fn all(&self) -> bool {
        self.alpha_pow_n_is_identity && self.beta_squared_is_identity && self.alpha_beta_eq_beta_alpha_pow_n_minus_1
    }
}

pub fn dihedral_relations(alpha: &Permutation, beta: &Permutation, n: usize) -> Result<DihedralRelations> {
    let ab = compose(alpha, beta)?;
    let ba = compose_unchecked(beta, &alpha.pow(n.saturating_sub(1)));
    Ok(DihedralRelations {
        alpha_pow_n_is_identity: alpha.pow(n).is_identity(),
        beta_squared_is_identity: beta.pow(2).is_identity(),
        alpha_beta_eq_beta_alpha_pow_n_minus_1: ab == ba,
    })
}

pub fn check_dihedral(alpha: &Permutation, beta: &Permutation, n: usize) -> Result<bool> {
    Ok(dihedral_relations(alpha, beta, n)?.all())
}

/// Group element with its word `α^i β^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledElement {
    pub perm: Permutation,
    pub alpha_power: usize,
    pub beta_power: usize,
}

impl LabeledElement {
    pub fn word(&self) -> String {
        let a = match self.alpha_power {
            0 => String::new(),
            1 => "α".into(),
            i => format!("α^{i}"),
        };
        let b = if self.beta_power == 1 { "β" } else { "" };
        let w = format!("{a}{b}");
        if w.is_empty() {
            "e".into()
        } else {
            w
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    pub elements: Vec<LabeledElement>,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub n: usize,
    /// Words that produced an element already present; non-empty means fewer than `2n` elements.
    pub collapsed: Vec<(usize, usize)>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn perms(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter().map(|e| &e.perm)
    }
}

/// The products `α^i β^j`, `0 ≤ i < n`, `0 ≤ j ≤ 1`, first occurrence kept.
pub fn generate_from(alpha: &Permutation, beta: &Permutation, n: usize) -> Result<GroupTable> {
    if alpha.len() != beta.len() {
        return Err(Error::input("generators act on different vertex counts"));
    }
    let mut elements: Vec<LabeledElement> = Vec::with_capacity(2 * n);
    let mut collapsed = Vec::new();
    for j in 0..2 {
        for i in 0..n.max(1) {
            let perm = compose_unchecked(&alpha.pow(i), &beta.pow(j));
            if elements.iter().any(|e| e.perm == perm) {
                collapsed.push((i, j));
            } else {
                elements.push(LabeledElement { perm, alpha_power: i, beta_power: j });
            }
        }
    }
    Ok(GroupTable { elements, alpha: alpha.clone(), beta: beta.clone(), n, collapsed })
}

/// Element-set equality.
pub fn match_group(decoded: &[Permutation], table: &GroupTable) -> bool {
    let a: BTreeSet<&Permutation> = decoded.iter().collect();
    let b: BTreeSet<&Permutation> = table.perms().collect();
    a == b
}

/// A generator pair `(α, β)` with `n = |G|/2` that satisfies the dihedral relations
/// and generates exactly `elems`. Pairs listed in `preferred` are tried first, then
/// the elements in lexicographic order.
pub fn find_dihedral_generators(elems: &[Permutation], preferred: &[(Permutation, Permutation)]) -> Option<(Permutation, Permutation, usize)> {
    if elems.is_empty() || elems.len() % 2 != 0 {
        return None;
    }
    let n = elems.len() / 2;
    let generates = |a: &Permutation, b: &Permutation| {
        check_dihedral(a, b, n).unwrap_or(false) && generate_from(a, b, n).is_ok_and(|t| t.collapsed.is_empty() && match_group(elems, &t))
    };
    if let Some((a, b)) = preferred.iter().find(|(a, b)| generates(a, b)) {
        return Some((a.clone(), b.clone(), n));
    }
    let mut sorted: Vec<&Permutation> = elems.iter().collect();
    sorted.sort();
    let alphas = sorted.iter().filter(|p| p.order() == n);
    for a in alphas {
        if let Some(b) = sorted.iter().filter(|p| p.order() <= 2).find(|b| generates(a, b)) {
            return Some(((*a).clone(), (*b).clone(), n));
        }
    }
    None
}

/// Generator pairs `(α, β, n)` used in the published automorphism tables, keyed by
/// fixture name.
pub fn published_generators(fixture: &str) -> Option<(Permutation, Permutation, usize)> {
    let (a, b, n) = match fixture {
        "c4" => ("3012", "0321", 4),
        "c5" => ("40123", "04321", 5),
        "c6" => ("501234", "105432", 6),
        "c7" => ("6012345", "0654321", 7),
        "g23" => ("452301", "103254", 2),
        "w7" => ("5012346", "1054326", 6),
        _ => return None,
    };
    Some((a.parse().expect("valid literal"), b.parse().expect("valid literal"), n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generators {
    pub alpha: Permutation,
    pub beta: Permutation,
}

/// Group report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub elements: Vec<Permutation>,
    pub closed: bool,
    pub generators: Option<Generators>,
    pub relations_checked: Option<DihedralRelations>,
    pub dihedral_n: Option<usize>,
    /// `α^i β^j` label of each element, same order as `elements`, when generators were found.
    pub words: Option<Vec<String>>,
}

/// Closure, generators and relations for a decoded ground set.
pub fn group_report(decoded: &[Permutation], preferred: &[(Permutation, Permutation)]) -> GroupReport {
    let mut elements = decoded.to_vec();
    elements.sort();
    let found = find_dihedral_generators(&elements, preferred);
    let relations = found.as_ref().map(|(a, b, n)| dihedral_relations(a, b, *n).expect("same size"));
    let words = found.as_ref().map(|(a, b, n)| {
        let table = generate_from(a, b, *n).expect("same size");
        elements
            .iter()
            .map(|p| table.elements.iter().find(|e| &e.perm == p).map_or_else(|| "?".into(), LabeledElement::word))
            .collect()
    });
    GroupReport {
        order: elements.len(),
        closed: verify_closure(&elements).is_ok(),
        generators: found.as_ref().map(|(a, b, _)| Generators { alpha: a.clone(), beta: b.clone() }),
        relations_checked: relations,
        dihedral_n: found.map(|(_, _, n)| n),
        words,
        elements,
    }
}
