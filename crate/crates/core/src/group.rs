//! Grading groups: free abelian lattices ℤ^d and finite groups given by a
//! multiplication table, together with subgroups and coset labels.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Lattice(Vec<i64>),
    Finite(usize),
}

impl GroupElem {
    pub fn int(n: i64) -> Self {
        GroupElem::Lattice(vec![n])
    }

    /// The integer value of a rank-1 lattice element.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            GroupElem::Lattice(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Lattice(v) if v.len() == 1 => write!(f, "{}", v[0]),
            GroupElem::Lattice(v) => write!(f, "{v:?}"),
            GroupElem::Finite(i) => write!(f, "#{i}"),
        }
    }
}

/// A finite group by Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = table.len();
        if n == 0 || names.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Schema("group table must be square with entries < order".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Schema("group table has no two-sided identity".into()))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::Schema(format!("element {} has no inverse", names[g])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Schema(format!(
                            "group table not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table, identity, inverse })
    }

    /// Symmetric group on `n` points; elements are permutations in
    /// lexicographic order, composed as functions (`(gh)(x) = g(h(x))`).
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|g| perms.iter().map(|h| index(&h.iter().map(|&x| g[x]).collect())).collect())
            .collect();
        let names = perms.iter().map(|p| cycle_name(p)).collect();
        FiniteGroup::new(names, table).expect("symmetric group table is valid")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|k| k.to_string()).collect();
        FiniteGroup::new(names, table).expect("cyclic group table is valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if set.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Conjugacy classes, each sorted, in order of least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for x in 0..self.order() {
            if seen[x] {
                continue;
            }
            let cls: BTreeSet<usize> = (0..self.order()).map(|g| self.conj(g, x)).collect();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls.into_iter().collect());
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] == i {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cyc.push((j + 1).to_string());
            j = p[j];
        }
        s.push('(');
        s.push_str(&cyc.join(""));
        s.push(')');
    }
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    FreeAbelian { rank: usize },
    Finite(Arc<FiniteGroup>),
}

/// The grading group of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: GroupKind,
}

impl GroupSpec {
    pub fn integers() -> Self {
        GroupSpec { kind: GroupKind::FreeAbelian { rank: 1 } }
    }

    pub fn lattice(rank: usize) -> Self {
        GroupSpec { kind: GroupKind::FreeAbelian { rank } }
    }

    pub fn finite(g: FiniteGroup) -> Self {
        GroupSpec { kind: GroupKind::Finite(Arc::new(g)) }
    }

    pub fn finite_group(&self) -> Option<&Arc<FiniteGroup>> {
        match &self.kind {
            GroupKind::Finite(g) => Some(g),
            GroupKind::FreeAbelian { .. } => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::FreeAbelian { .. } => true,
            GroupKind::Finite(g) => (0..g.order()).all(|a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a))),
        }
    }

    pub fn identity(&self) -> GroupElem {
        match &self.kind {
            GroupKind::FreeAbelian { rank } => GroupElem::Lattice(vec![0; *rank]),
            GroupKind::Finite(g) => GroupElem::Finite(g.identity()),
        }
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        match (&self.kind, x) {
            (GroupKind::FreeAbelian { rank }, GroupElem::Lattice(v)) => v.len() == *rank,
            (GroupKind::Finite(g), GroupElem::Finite(i)) => *i < g.order(),
            _ => false,
        }
    }

    pub fn check(&self, x: &GroupElem) -> Result<(), Error> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Group(format!("{x} is not an element of the grading group")))
        }
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        match (a, b) {
            (GroupElem::Lattice(x), GroupElem::Lattice(y)) => {
                GroupElem::Lattice(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupElem::Finite(x), GroupElem::Finite(y)) => {
                GroupElem::Finite(self.finite_group().expect("finite group").mul(*x, *y))
            }
            _ => panic!("mixed group elements"),
        }
    }

    pub fn inv(&self, a: &GroupElem) -> GroupElem {
        match a {
            GroupElem::Lattice(x) => GroupElem::Lattice(x.iter().map(|p| -p).collect()),
            GroupElem::Finite(x) => GroupElem::Finite(self.finite_group().expect("finite group").inv(*x)),
        }
    }

    /// Subgroup generated by `gens`; an empty list gives `{e}`.
    pub fn subgroup(&self, gens: &[GroupElem]) -> Result<Subgroup, Error> {
        for g in gens {
            self.check(g)?;
        }
        match &self.kind {
            GroupKind::FreeAbelian { rank } => {
                let rows: Vec<Vec<i64>> = gens
                    .iter()
                    .map(|g| match g {
                        GroupElem::Lattice(v) => v.clone(),
                        GroupElem::Finite(_) => unreachable!(),
                    })
                    .collect();
                Ok(Subgroup::Lattice { rank: *rank, basis: hermite_rows(rows, *rank) })
            }
            GroupKind::Finite(g) => {
                let ids: Vec<usize> = gens
                    .iter()
                    .map(|x| match x {
                        GroupElem::Finite(i) => *i,
                        GroupElem::Lattice(_) => unreachable!(),
                    })
                    .collect();
                Ok(Subgroup::Finite { group: g.clone(), members: g.closure(&ids) })
            }
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup(&[]).expect("empty generating set")
    }

    pub fn whole(&self) -> Subgroup {
        match &self.kind {
            GroupKind::FreeAbelian { rank } => {
                let gens: Vec<GroupElem> = (0..*rank)
                    .map(|i| GroupElem::Lattice((0..*rank).map(|j| i64::from(i == j)).collect()))
                    .collect();
                self.subgroup(&gens).unwrap()
            }
            GroupKind::Finite(g) => Subgroup::Finite { group: g.clone(), members: (0..g.order()).collect() },
        }
    }
}

/// Row-echelon (Hermite-style) basis of the lattice spanned by `rows`.
fn hermite_rows(mut rows: Vec<Vec<i64>>, rank: usize) -> Vec<Vec<i64>> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut basis = Vec::new();
    let mut col = 0;
    while col < rank && !rows.is_empty() {
        // Euclid on column `col` across all rows.
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let p = rows[piv].clone();
            for &i in &nz {
                if i != piv {
                    let k = rows[i][col].div_euclid(p[col]);
                    for j in 0..rank {
                        rows[i][j] -= k * p[j];
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut r = rows.remove(i);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(r);
        }
        col += 1;
    }
    // reduce entries above pivots
    for i in 0..basis.len() {
        let pc = basis[i].iter().position(|&x| x != 0).unwrap();
        for k in 0..i {
            let f = basis[k][pc].div_euclid(basis[i][pc]);
            if f != 0 {
                let bi = basis[i].clone();
                for j in 0..rank {
                    basis[k][j] -= f * bi[j];
                }
            }
        }
    }
    basis
}

/// A subgroup with canonical coset labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    Lattice { rank: usize, basis: Vec<Vec<i64>> },
    Finite { group: Arc<FiniteGroup>, members: Vec<usize> },
}

impl Subgroup {
    /// `mℤ ⊂ ℤ` (`m = 0` is the trivial subgroup).
    pub fn multiples(m: i64) -> Self {
        Subgroup::Lattice { rank: 1, basis: if m == 0 { vec![] } else { vec![vec![m.abs()]] } }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            Subgroup::Lattice { basis, .. } => basis.is_empty(),
            Subgroup::Finite { members, .. } => members.len() == 1,
        }
    }

    /// Generator `m` of a subgroup `mℤ` of ℤ.
    pub fn modulus(&self) -> Option<i64> {
        match self {
            Subgroup::Lattice { rank: 1, basis } => Some(basis.first().map_or(0, |b| b[0])),
            _ => None,
        }
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        match (self, x) {
            (Subgroup::Lattice { .. }, GroupElem::Lattice(v)) => self.reduce(v).iter().all(|&c| c == 0),
            (Subgroup::Finite { members, .. }, GroupElem::Finite(i)) => members.binary_search(i).is_ok(),
            _ => false,
        }
    }

    fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let Subgroup::Lattice { basis, .. } = self else { unreachable!() };
        let mut v = v.to_vec();
        for b in basis {
            let pc = b.iter().position(|&x| x != 0).unwrap();
            let k = v[pc].div_euclid(b[pc]);
            for j in 0..v.len() {
                v[j] -= k * b[j];
            }
        }
        v
    }

    /// Canonical label of the left coset `xH`.
    pub fn coset(&self, x: &GroupElem) -> GroupElem {
        match (self, x) {
            (Subgroup::Lattice { .. }, GroupElem::Lattice(v)) => GroupElem::Lattice(self.reduce(v)),
            (Subgroup::Finite { group, members }, GroupElem::Finite(i)) => {
                GroupElem::Finite(members.iter().map(|&h| group.mul(*i, h)).min().unwrap())
            }
            _ => panic!("coset of foreign element"),
        }
    }

    pub fn members(&self) -> Option<&[usize]> {
        match self {
            Subgroup::Finite { members, .. } => Some(members),
            Subgroup::Lattice { .. } => None,
        }
    }

    /// Elements of `fHf⁻¹`.
    pub fn conjugate(&self, f: &GroupElem) -> Subgroup {
        match (self, f) {
            (Subgroup::Finite { group, members }, GroupElem::Finite(fi)) => {
                let mut m: Vec<usize> = members.iter().map(|&h| group.conj(*fi, h)).collect();
                m.sort_unstable();
                Subgroup::Finite { group: group.clone(), members: m }
            }
            _ => self.clone(),
        }
    }

    pub fn is_normal(&self) -> bool {
        match self {
            Subgroup::Lattice { .. } => true,
            Subgroup::Finite { group, .. } => {
                (0..group.order()).all(|f| self.conjugate(&GroupElem::Finite(f)) == *self)
            }
        }
    }

    /// Left coset labels of a finite group, in order of least element.
    pub fn coset_labels(&self) -> Option<Vec<GroupElem>> {
        match self {
            Subgroup::Finite { group, .. } => {
                let set: BTreeSet<GroupElem> =
                    (0..group.order()).map(|g| self.coset(&GroupElem::Finite(g))).collect();
                Some(set.into_iter().collect())
            }
            Subgroup::Lattice { .. } => None,
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::Lattice { rank: 1, basis } => match basis.first() {
                None => write!(f, "{{0}}"),
                Some(b) if b[0] == 1 => write!(f, "Z"),
                Some(b) => write!(f, "{}Z", b[0]),
            },
            Subgroup::Lattice { basis, .. } => write!(f, "span{basis:?}"),
            Subgroup::Finite { group, members } => {
                let names: Vec<&str> = members.iter().map(|&m| group.name(m)).collect();
                write!(f, "{{{}}}", names.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn s3_structure() {
        let g = FiniteGroup::symmetric(3);
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(g.identity()), "e");
        let c = g.find("(123)").unwrap();
        let a3 = g.closure(&[c]);
        assert_eq!(a3.len(), 3);
        assert_eq!(g.classes().len(), 3);
        let spec = GroupSpec::finite(g.clone());
        let h = spec.subgroup(&[GroupElem::Finite(c)]).unwrap();
        assert!(h.is_normal());
        assert_eq!(h.coset_labels().unwrap().len(), 2);
        let t = g.find("(12)").unwrap();
        assert!(!spec.subgroup(&[GroupElem::Finite(t)]).unwrap().is_normal());
    }

    #[test]
    fn bad_tables_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroup::new(names.clone(), vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::new(names, vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn lattice_cosets() {
        let z = GroupSpec::integers();
        let h = z.subgroup(&[GroupElem::int(4), GroupElem::int(6)]).unwrap();
        assert_eq!(h.modulus(), Some(2));
        assert_eq!(h.coset(&GroupElem::int(-3)), GroupElem::int(1));
        assert!(z.trivial_subgroup().is_trivial());
        let z2 = GroupSpec::lattice(2);
        let h2 = z2.subgroup(&[GroupElem::Lattice(vec![2, 0]), GroupElem::Lattice(vec![1, 1])]).unwrap();
        assert!(h2.contains(&GroupElem::Lattice(vec![0, 2])));
        assert!(!h2.contains(&GroupElem::Lattice(vec![1, 0])));
    }
}
