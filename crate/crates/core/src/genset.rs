//! Symmetric generating sets with their inverse involution and the partial
//! product `S × S → S`.
//!
//! The ambient group is never materialized. A [`GeneratingSet`] stores only
//! the products of two generators that land back in `S`; everything
//! downstream (link graph, cochains) consumes exactly that.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A symmetric generating set `S` together with `s ↦ s⁻¹` and the partial
/// multiplication table. Symbol order is significant: it fixes all matrix
/// and vector indexing downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
    inverse: Vec<usize>,
    product: Vec<Option<usize>>,
}

impl GeneratingSet {
    /// Builds a generating set from labels, an inverse map and the defined
    /// products `(a, b, a·b)`.
    ///
    /// Only structural sanity is enforced here (labels nonempty, distinct and
    /// comma free, indices in range, no conflicting products). The group
    /// axioms are checked by [`validate_generating_set`].
    pub fn new(
        symbols: Vec<String>,
        inverse: Vec<usize>,
        products: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let n = symbols.len();
        if n == 0 {
            return Err(Error::InvalidGenset("no symbols".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidGenset("empty symbol label".into()));
            }
            if s.contains(',') {
                return Err(Error::InvalidGenset(format!("label `{s}` contains a comma")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidGenset(format!("duplicate label `{s}`")));
            }
        }
        if inverse.len() != n {
            return Err(Error::InvalidGenset(format!(
                "inverse map has {} entries for {n} symbols",
                inverse.len()
            )));
        }
        if let Some(&bad) = inverse.iter().find(|&&j| j >= n) {
            return Err(Error::InvalidGenset(format!("inverse index {bad} out of range")));
        }
        let mut product = vec![None; n * n];
        for (a, b, c) in products {
            if a >= n || b >= n || c >= n {
                return Err(Error::InvalidGenset(format!("product ({a},{b})->{c} out of range")));
            }
            match product[a * n + b] {
                Some(prev) if prev != c => {
                    return Err(Error::InvalidGenset(format!(
                        "conflicting products for ({},{})",
                        symbols[a], symbols[b]
                    )))
                }
                _ => product[a * n + b] = Some(c),
            }
        }
        Ok(Self { symbols, index, inverse, product })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn label(&self, s: usize) -> &str {
        &self.symbols[s]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn inverse(&self, s: usize) -> usize {
        self.inverse[s]
    }

    pub fn is_involutive(&self, s: usize) -> bool {
        self.inverse[s] == s
    }

    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a * self.len() + b]
    }

    /// All defined products `(a, b, a·b)` in row-major symbol order.
    pub fn products(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        self.product
            .iter()
            .enumerate()
            .filter_map(move |(k, p)| p.map(|c| (k / n, k % n, c)))
    }

    pub fn product_count(&self) -> usize {
        self.product.iter().filter(|p| p.is_some()).count()
    }

    /// One representative per inverse orbit `{s, s⁻¹}`: the smaller index.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| s <= self.inverse[s]).collect()
    }

    /// True when every ordered pair `(s, s')` with `s' ≠ s⁻¹` has a defined
    /// product, i.e. `S ∪ {e}` is closed and `S = G ∖ {e}`.
    pub fn covers_all_nonidentity(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| b == self.inverse[a] || self.product(a, b).is_some()))
    }

    /// Relabels symbols by the permutation `order` (new index `i` takes old
    /// symbol `order[i]`).
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidParameter("reordering is not a permutation".into()));
        }
        let mut new_of_old = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let symbols = order.iter().map(|&o| self.symbols[o].clone()).collect();
        let inverse = order.iter().map(|&o| new_of_old[self.inverse[o]]).collect();
        let products = self
            .products()
            .map(|(a, b, c)| (new_of_old[a], new_of_old[b], new_of_old[c]))
            .collect::<Vec<_>>();
        Self::new(symbols, inverse, products)
    }
}

/// Named group axiom checked by [`validate_generating_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Involution,
    IdentityExcluded,
    InverseCompatibility,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Involution => "involution",
            Axiom::IdentityExcluded => "identity-excluded",
            Axiom::InverseCompatibility => "inverse-compatibility",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub symbols: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Converts a non-empty report into an error.
    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            return Ok(());
        }
        let msg = self
            .violations
            .iter()
            .map(|v| format!("{} [{}]", v.axiom, v.symbols.join(" ")))
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::InvalidGenset(msg))
    }
}

/// Checks every generating set axiom. Violations are data, not failures.
pub fn validate_generating_set(gs: &GeneratingSet) -> ValidationReport {
    let n = gs.len();
    let lab = |i: usize| gs.label(i).to_string();
    let mut violations = Vec::new();

    for s in 0..n {
        let inv = gs.inverse(s);
        if gs.inverse(inv) != s {
            violations.push(Violation {
                axiom: Axiom::Involution,
                symbols: vec![lab(s), lab(inv), lab(gs.inverse(inv))],
            });
        }
        if gs.product(s, inv).is_some() {
            violations.push(Violation { axiom: Axiom::IdentityExcluded, symbols: vec![lab(s), lab(inv)] });
        }
    }

    for (a, b, c) in gs.products() {
        let expected = gs.inverse(c);
        match gs.product(gs.inverse(b), gs.inverse(a)) {
            Some(u) if u == expected => {}
            other => {
                let mut symbols = vec![lab(a), lab(b), lab(c)];
                if let Some(u) = other {
                    symbols.push(lab(u));
                }
                violations.push(Violation { axiom: Axiom::InverseCompatibility, symbols });
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            let Some(ab) = gs.product(a, b) else { continue };
            for c in 0..n {
                let Some(bc) = gs.product(b, c) else { continue };
                if let (Some(l), Some(r)) = (gs.product(ab, c), gs.product(a, bc)) {
                    if l != r {
                        violations.push(Violation {
                            axiom: Axiom::Associativity,
                            symbols: vec![lab(a), lab(b), lab(c)],
                        });
                    }
                }
            }
        }
    }

    ValidationReport { violations }
}

/// A permutation of `{0, …, N−1}` stored as its image array (`p[i]` is the
/// image of `i`). Composition `p ∘ q` applies `q` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Self(inv)
    }

    /// +1 for even permutations, −1 for odd ones.
    pub fn sign(&self) -> i32 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut sign = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

/// Which subset of the generated group becomes `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GensetMode {
    /// The supplied generators together with their inverses.
    GivenPlusInverses,
    /// Every non-identity element of the generated group.
    AllNonIdentity,
}

/// A generating set built from permutations, keeping the permutation behind
/// each symbol.
#[derive(Clone, Debug)]
pub struct PermutationSet {
    pub genset: GeneratingSet,
    pub elements: Vec<Permutation>,
}

fn default_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

/// Builds a generating set from permutation generators.
///
/// Generators are named `a, b, c, …`. In [`GensetMode::AllNonIdentity`] every
/// element is labelled by its shortlex-first word in the generators (`ab`
/// means `a ∘ b`), and symbols are ordered by that word. In
/// [`GensetMode::GivenPlusInverses`] the generators come first, followed by
/// any missing inverses labelled `x^-1`.
pub fn genset_from_permutations(generators: &[Permutation], mode: GensetMode) -> Result<PermutationSet> {
    genset_from_named_permutations(generators, &default_names(generators.len()), mode)
}

pub fn genset_from_named_permutations(
    generators: &[Permutation],
    names: &[String],
    mode: GensetMode,
) -> Result<PermutationSet> {
    if generators.is_empty() {
        return Err(Error::InvalidPermutation("no generators".into()));
    }
    if names.len() != generators.len() {
        return Err(Error::InvalidParameter("one name per generator required".into()));
    }
    let degree = generators[0].degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(Error::InvalidPermutation("generators act on different point sets".into()));
    }
    if generators.iter().any(Permutation::is_identity) {
        return Err(Error::IdentityGenerator);
    }

    let (labels, elements): (Vec<String>, Vec<Permutation>) = match mode {
        GensetMode::AllNonIdentity => {
            let id = Permutation::identity(degree);
            let mut seen: HashMap<Permutation, usize> = HashMap::new();
            seen.insert(id.clone(), 0);
            let mut found: Vec<(String, Permutation)> = Vec::new();
            let mut queue = VecDeque::from([(String::new(), id)]);
            while let Some((word, g)) = queue.pop_front() {
                for (gen, name) in generators.iter().zip(names) {
                    let h = g.compose(gen);
                    if !seen.contains_key(&h) {
                        seen.insert(h.clone(), found.len() + 1);
                        let w = format!("{word}{name}");
                        found.push((w.clone(), h.clone()));
                        queue.push_back((w, h));
                    }
                }
            }
            found.into_iter().unzip()
        }
        GensetMode::GivenPlusInverses => {
            let mut labels: Vec<String> = Vec::new();
            let mut elements: Vec<Permutation> = Vec::new();
            for (g, name) in generators.iter().zip(names) {
                if elements.contains(g) {
                    return Err(Error::InvalidPermutation(format!("duplicate generator `{name}`")));
                }
                labels.push(name.clone());
                elements.push(g.clone());
            }
            for (g, name) in generators.iter().zip(names) {
                let inv = g.inverse();
                if !elements.contains(&inv) {
                    labels.push(format!("{name}^-1"));
                    elements.push(inv);
                }
            }
            (labels, elements)
        }
    };

    let position: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let inverse = elements
        .iter()
        .map(|p| position.get(&p.inverse()).copied().expect("S is inverse-closed"))
        .collect();
    let mut products = Vec::new();
    for (a, pa) in elements.iter().enumerate() {
        for (b, pb) in elements.iter().enumerate() {
            if let Some(&c) = position.get(&pa.compose(pb)) {
                products.push((a, b, c));
            }
        }
    }
    let genset = GeneratingSet::new(labels, inverse, products)?;
    Ok(PermutationSet { genset, elements })
}

/// A full finite group multiplication table over labelled elements.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub labels: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    /// Returns the identity index after checking the group axioms (identity,
    /// Latin square rows and columns, associativity).
    pub fn check(&self) -> Result<usize> {
        let n = self.labels.len();
        if n == 0 {
            return Err(Error::GroupTable("empty table".into()));
        }
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(Error::GroupTable("table is not square".into()));
        }
        for (a, row) in self.table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &c in row {
                if c >= n || std::mem::replace(&mut seen[c], true) {
                    return Err(Error::GroupTable(format!("row `{}` is not a permutation", self.labels[a])));
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                if std::mem::replace(&mut seen[self.table[a][b]], true) {
                    return Err(Error::GroupTable(format!("column `{}` is not a permutation", self.labels[b])));
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| self.table[e][x] == x && self.table[x][e] == x))
            .ok_or_else(|| Error::GroupTable("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::GroupTable(format!(
                            "associativity fails on ({},{},{})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        // Latin rows plus an identity give two-sided inverses
        Ok(e)
    }

    /// The multiplication table of the group generated by `perms`, identity
    /// first, then the permutation set's symbols in order.
    pub fn from_permutation_set(ps: &PermutationSet, identity_label: &str) -> Result<Self> {
        let degree = ps.elements.first().map(Permutation::degree).unwrap_or(0);
        let mut elements = vec![Permutation::identity(degree)];
        elements.extend(ps.elements.iter().cloned());
        let mut labels = vec![identity_label.to_string()];
        labels.extend(ps.genset.symbols().iter().cloned());
        let position: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in &elements {
                let c = position
                    .get(&a.compose(b))
                    .ok_or_else(|| Error::GroupTable("permutation set is not a whole group minus e".into()))?;
                row.push(*c);
            }
            table.push(row);
        }
        Ok(Self { labels, table })
    }
}

/// Restricts a full group table to `subset`, which must exclude the identity
/// and be closed under inversion.
pub fn genset_from_table(table: &GroupTable, subset: &[&str]) -> Result<GeneratingSet> {
    let e = table.check()?;
    let n = table.labels.len();
    let lookup: HashMap<&str, usize> =
        table.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut members = Vec::with_capacity(subset.len());
    for &label in subset {
        let i = *lookup
            .get(label)
            .ok_or_else(|| Error::InvalidGenset(format!("unknown label `{label}`")))?;
        if i == e {
            return Err(Error::InvalidGenset(format!("subset contains the identity `{label}`")));
        }
        if members.contains(&i) {
            return Err(Error::InvalidGenset(format!("duplicate label `{label}`")));
        }
        members.push(i);
    }
    let mut pos = vec![None; n];
    for (k, &i) in members.iter().enumerate() {
        pos[i] = Some(k);
    }
    let group_inverse = |a: usize| (0..n).find(|&b| table.table[a][b] == e).expect("checked group");
    let mut inverse = Vec::with_capacity(members.len());
    for &i in &members {
        let inv = group_inverse(i);
        inverse.push(pos[inv].ok_or_else(|| {
            Error::InvalidGenset(format!("subset is not inverse-closed at `{}`", table.labels[i]))
        })?);
    }
    let mut products = Vec::new();
    for (ka, &a) in members.iter().enumerate() {
        for (kb, &b) in members.iter().enumerate() {
            if let Some(kc) = pos[table.table[a][b]] {
                products.push((ka, kb, kc));
            }
        }
    }
    GeneratingSet::new(members.iter().map(|&i| table.labels[i].clone()).collect(), inverse, products)
}

/// Cyclic shift `i ↦ i + k mod n`.
pub fn rotation(n: usize, k: usize) -> Permutation {
    Permutation((0..n).map(|i| (i + k) % n).collect())
}

/// Transposition of `i` and `j` on `n` points.
pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, j);
    Permutation(p)
}

/// `S₃` with `S = G ∖ {e}`, generated by `(0 1)` and `(0 1 2)`.
pub fn symmetric_group_s3() -> PermutationSet {
    genset_from_permutations(&[transposition(3, 0, 1), rotation(3, 1)], GensetMode::AllNonIdentity)
        .expect("S3 generators are valid")
}

/// `ℤ/n` with `S = G ∖ {e}`, generated by the rotation by one.
pub fn cyclic_group(n: usize) -> Result<PermutationSet> {
    if n < 2 {
        return Err(Error::InvalidParameter("cyclic group needs n >= 2".into()));
    }
    genset_from_permutations(&[rotation(n, 1)], GensetMode::AllNonIdentity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_all_nonidentity() {
        let ps = symmetric_group_s3();
        let gs = &ps.genset;
        assert_eq!(gs.len(), 5);
        assert_eq!(gs.product_count(), 20);
        assert!(validate_generating_set(gs).is_ok());
        for s in 0..5 {
            for t in 0..5 {
                assert_eq!(gs.product(s, t).is_some(), t != gs.inverse(s));
            }
        }
        assert!(gs.covers_all_nonidentity());
    }

    #[test]
    fn z3_products() {
        let ps = cyclic_group(3).unwrap();
        let gs = &ps.genset;
        assert_eq!(gs.symbols(), &["a".to_string(), "aa".to_string()]);
        let (a, a2) = (0, 1);
        assert_eq!(gs.product(a, a), Some(a2));
        assert_eq!(gs.product(a2, a2), Some(a));
        assert_eq!(gs.product(a, a2), None);
        assert_eq!(gs.product_count(), 2);
    }

    #[test]
    fn z2_has_empty_table() {
        let ps = cyclic_group(2).unwrap();
        assert_eq!(ps.genset.len(), 1);
        assert_eq!(ps.genset.product_count(), 0);
        assert!(ps.genset.is_involutive(0));
    }

    #[test]
    fn identity_generator_rejected() {
        let err = genset_from_permutations(&[Permutation::identity(3)], GensetMode::AllNonIdentity);
        assert!(matches!(err, Err(Error::IdentityGenerator)));
    }

    #[test]
    fn given_plus_inverses_closes_set() {
        let ps = genset_from_permutations(&[rotation(5, 1)], GensetMode::GivenPlusInverses).unwrap();
        assert_eq!(ps.genset.symbols(), &["a".to_string(), "a^-1".to_string()]);
        assert_eq!(ps.genset.inverse(0), 1);
        assert!(validate_generating_set(&ps.genset).is_ok());
    }

    #[test]
    fn broken_involution_is_reported() {
        let gs = GeneratingSet::new(vec!["a".into(), "b".into(), "c".into()], vec![1, 2, 0], []).unwrap();
        let rep = validate_generating_set(&gs);
        assert!(rep.has(Axiom::Involution));
    }

    #[test]
    fn broken_inverse_compatibility_is_reported() {
        // x, y, x^-1, y^-1 with x·y = y but y^-1·x^-1 = x (should be y^-1)
        let labels = vec!["x".into(), "y".into(), "X".into(), "Y".into()];
        let gs = GeneratingSet::new(labels, vec![2, 3, 0, 1], [(0, 1, 1), (3, 2, 0)]).unwrap();
        let rep = validate_generating_set(&gs);
        assert!(rep.has(Axiom::InverseCompatibility));
        assert!(!rep.has(Axiom::Involution));
    }

    #[test]
    fn identity_product_is_reported() {
        let gs = GeneratingSet::new(vec!["a".into(), "b".into()], vec![1, 0], [(0, 1, 0)]).unwrap();
        assert!(validate_generating_set(&gs).has(Axiom::IdentityExcluded));
    }

    #[test]
    fn table_path_matches_permutation_path() {
        let ps = symmetric_group_s3();
        let table = GroupTable::from_permutation_set(&ps, "e").unwrap();
        let subset: Vec<&str> = ps.genset.symbols().iter().map(String::as_str).collect();
        let gs = genset_from_table(&table, &subset).unwrap();
        assert_eq!(gs, ps.genset);
    }

    fn z4_table() -> GroupTable {
        let labels = ["e", "g", "g2", "g3"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        GroupTable { labels, table }
    }

    #[test]
    fn z4_generators_have_empty_table() {
        let gs = genset_from_table(&z4_table(), &["g", "g3"]).unwrap();
        assert_eq!(gs.product_count(), 0);
        assert_eq!(gs.inverse(0), 1);
    }

    #[test]
    fn table_subset_errors() {
        let t = z4_table();
        assert!(genset_from_table(&t, &["e", "g"]).is_err());
        assert!(genset_from_table(&t, &["g"]).is_err());
        let mut bad = t.clone();
        bad.table[1][1] = 1;
        assert!(matches!(genset_from_table(&bad, &["g2"]), Err(Error::GroupTable(_))));
    }

    #[test]
    fn sign_of_permutations() {
        assert_eq!(transposition(3, 0, 1).sign(), -1);
        assert_eq!(rotation(3, 1).sign(), 1);
        assert_eq!(rotation(4, 1).sign(), -1);
    }
}
