//! Finite carriers and the operation tables defined on them.
//!
//! Elements are dense indices `0..n`. Tables are stored flat and validated
//! once on construction, so every lookup afterwards is an unchecked index.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// An element of a finite carrier, identified by its index.
pub type Elem = usize;

/// Named elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    names: Vec<String>,
}

impl Carrier {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.contains('#') || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(Carrier { names })
    }

    /// Labels for a bounded structure: `0` first, `1` last, letters between.
    pub fn bounded_labels(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| {
                if i == 0 {
                    "0".to_owned()
                } else if i == n - 1 {
                    "1".to_owned()
                } else {
                    letter_label(i - 1)
                }
            })
            .collect();
        Carrier { names }
    }

    /// Plain numeric labels `e0 .. e{n-1}`.
    pub fn numbered(n: usize) -> Self {
        assert!(n >= 1);
        Carrier {
            names: (0..n).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    /// Carrier whose element `perm[old]` carries the old name of `old`.
    pub fn relabeled(&self, perm: &[Elem]) -> Self {
        let mut names = vec![String::new(); self.size()];
        for (old, &new) in perm.iter().enumerate() {
            names[new] = self.names[old].clone();
        }
        Carrier { names }
    }
}

pub(crate) fn letter_label(i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < LETTERS.len() {
        (LETTERS[i] as char).to_string()
    } else {
        format!("e{i}")
    }
}

/// A total binary operation on `0..n`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryOp {
    n: usize,
    table: Vec<Elem>,
}

impl BinaryOp {
    pub fn from_rows(n: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::SizeMismatch {
                op: String::new(),
                expected: n,
                found: rows.len(),
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    op: String::new(),
                    expected: n,
                    found: row.len(),
                });
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table)
    }

    pub fn from_flat(n: usize, table: Vec<Elem>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::SizeMismatch {
                op: String::new(),
                expected: n * n,
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange {
                op: String::new(),
                value: bad,
                size: n,
            });
        }
        Ok(BinaryOp { n, table })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                assert!(v < n, "operation produced out-of-range element {v}");
                table.push(v);
            }
        }
        BinaryOp { n, table }
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.n + y]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.table
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Elem]> {
        self.table.chunks(self.n)
    }

    /// Return a copy with entry `(x, y)` replaced.
    pub fn with_entry(&self, x: Elem, y: Elem, value: Elem) -> Self {
        assert!(value < self.n);
        let mut out = self.clone();
        out.table[x * self.n + y] = value;
        out
    }

    /// Transport along the bijection `perm` (old index to new index).
    pub fn relabeled(&self, perm: &[Elem]) -> Self {
        let n = self.n;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        BinaryOp::from_fn(n, |x, y| perm[self.get(inv[x], inv[y])])
    }
}

/// A total unary operation on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnaryOp {
    map: Vec<Elem>,
}

impl UnaryOp {
    pub fn new(n: usize, map: Vec<Elem>) -> Result<Self> {
        if map.len() != n {
            return Err(Error::SizeMismatch {
                op: String::new(),
                expected: n,
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange {
                op: String::new(),
                value: bad,
                size: n,
            });
        }
        Ok(UnaryOp { map })
    }

    pub fn identity(n: usize) -> Self {
        UnaryOp {
            map: (0..n).collect(),
        }
    }

    pub fn from_fn(n: usize, f: impl FnMut(Elem) -> Elem) -> Self {
        let map: Vec<Elem> = (0..n).map(f).collect();
        assert!(map.iter().all(|&v| v < n));
        UnaryOp { map }
    }

    #[inline]
    pub fn get(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.map
    }

    pub fn relabeled(&self, perm: &[Elem]) -> Self {
        let mut map = vec![0; self.map.len()];
        for (old, &new) in perm.iter().enumerate() {
            map[new] = perm[self.map[old]];
        }
        UnaryOp { map }
    }
}

/// A binary relation on `0..n`, expected to be a partial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderRelation {
    n: usize,
    leq: Vec<bool>,
}

impl OrderRelation {
    /// Build from a predicate and verify reflexivity, antisymmetry and transitivity.
    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> bool) -> Result<Self> {
        let mut leq = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                leq.push(f(x, y));
            }
        }
        let rel = OrderRelation { n, leq };
        rel.validate()?;
        Ok(rel)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(Error::NotAPartialOrder { witness: vec![x] });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(Error::NotAPartialOrder { witness: vec![x, y] });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        return Err(Error::NotAPartialOrder {
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.n;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// An operation table of either arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Operation {
    Binary(BinaryOp),
    Unary(UnaryOp),
}

impl Operation {
    pub fn arity(&self) -> usize {
        match self {
            Operation::Binary(_) => 2,
            Operation::Unary(_) => 1,
        }
    }

    pub fn relabeled(&self, perm: &[Elem]) -> Self {
        match self {
            Operation::Binary(b) => Operation::Binary(b.relabeled(perm)),
            Operation::Unary(u) => Operation::Unary(u.relabeled(perm)),
        }
    }
}

/// Unvalidated table input for [`build_structure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawOp {
    Binary(Vec<Vec<Elem>>),
    Unary(Vec<Elem>),
}

/// A validated finite algebra with named operations and constants.
///
/// This is the untyped form shared by the file format and the isomorphism
/// machinery; the typed structures convert to and from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    carrier: Carrier,
    ops: Vec<(String, Operation)>,
    constants: Vec<(String, Elem)>,
}

/// Validate raw tables against a carrier and assemble an [`Algebra`].
pub fn build_structure(
    name: impl Into<String>,
    carrier: Carrier,
    ops: Vec<(String, RawOp)>,
    constants: Vec<(String, Elem)>,
) -> Result<Algebra> {
    let n = carrier.size();
    let mut seen = HashSet::new();
    let mut built = Vec::with_capacity(ops.len());
    for (op_name, raw) in ops {
        if !seen.insert(op_name.clone()) {
            return Err(Error::DuplicateName(op_name));
        }
        let op = match raw {
            RawOp::Binary(rows) => {
                Operation::Binary(BinaryOp::from_rows(n, &rows).map_err(|e| e.for_op(&op_name))?)
            }
            RawOp::Unary(map) => {
                Operation::Unary(UnaryOp::new(n, map).map_err(|e| e.for_op(&op_name))?)
            }
        };
        built.push((op_name, op));
    }
    Algebra::from_parts(name, carrier, built, constants)
}

impl Algebra {
    /// Assemble from already validated tables; checks sizes, names and constants.
    pub fn from_parts(
        name: impl Into<String>,
        carrier: Carrier,
        ops: Vec<(String, Operation)>,
        constants: Vec<(String, Elem)>,
    ) -> Result<Self> {
        let n = carrier.size();
        let mut seen = HashSet::new();
        for (op_name, op) in &ops {
            if !seen.insert(op_name.as_str()) {
                return Err(Error::DuplicateName(op_name.clone()));
            }
            let size = match op {
                Operation::Binary(b) => b.size(),
                Operation::Unary(u) => u.size(),
            };
            if size != n {
                return Err(Error::SizeMismatch {
                    op: op_name.clone(),
                    expected: n,
                    found: size,
                });
            }
        }
        let mut seen_consts = HashSet::new();
        for (c, v) in &constants {
            if !seen_consts.insert(c.as_str()) {
                return Err(Error::DuplicateName(c.clone()));
            }
            if *v >= n {
                return Err(Error::OutOfRange {
                    op: c.clone(),
                    value: *v,
                    size: n,
                });
            }
        }
        Ok(Algebra {
            name: name.into(),
            carrier,
            ops,
            constants,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn ops(&self) -> &[(String, Operation)] {
        &self.ops
    }

    pub fn constants(&self) -> &[(String, Elem)] {
        &self.constants
    }

    pub fn op(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|(n, _)| n == name).map(|(_, op)| op)
    }

    pub fn binary(&self, name: &str) -> Result<&BinaryOp> {
        match self.op(name) {
            Some(Operation::Binary(b)) => Ok(b),
            _ => Err(Error::Missing(format!("{name} (binary)"))),
        }
    }

    pub fn unary(&self, name: &str) -> Result<&UnaryOp> {
        match self.op(name) {
            Some(Operation::Unary(u)) => Ok(u),
            _ => Err(Error::Missing(format!("{name} (unary)"))),
        }
    }

    pub fn constant(&self, name: &str) -> Result<Elem> {
        self.constants
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::Missing(format!("{name} (constant)")))
    }

    pub fn has_op(&self, name: &str) -> bool {
        self.op(name).is_some()
    }

    /// Sorted operation names with arities, then sorted constant names.
    pub fn signature(&self) -> (Vec<(String, usize)>, Vec<String>) {
        let mut ops: Vec<_> = self
            .ops
            .iter()
            .map(|(n, op)| (n.clone(), op.arity()))
            .collect();
        ops.sort();
        let mut consts: Vec<_> = self.constants.iter().map(|(n, _)| n.clone()).collect();
        consts.sort();
        (ops, consts)
    }

    /// Transport every table and constant along `perm` (old index to new index).
    pub fn relabeled(&self, perm: &[Elem]) -> Self {
        Algebra {
            name: self.name.clone(),
            carrier: self.carrier.relabeled(perm),
            ops: self
                .ops
                .iter()
                .map(|(n, op)| (n.clone(), op.relabeled(perm)))
                .collect(),
            constants: self
                .constants
                .iter()
                .map(|(n, v)| (n.clone(), perm[*v]))
                .collect(),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::serialize_algebra(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain_join_is_valid() {
        let carrier = Carrier::new(["0", "1"]).unwrap();
        let alg = build_structure(
            "c2",
            carrier,
            vec![("join".into(), RawOp::Binary(vec![vec![0, 1], vec![1, 1]]))],
            vec![],
        )
        .unwrap();
        assert_eq!(alg.binary("join").unwrap().get(0, 1), 1);
    }

    #[test]
    fn out_of_range_entry_is_rejected() {
        let carrier = Carrier::new(["0", "1"]).unwrap();
        let err = build_structure(
            "bad",
            carrier,
            vec![("join".into(), RawOp::Binary(vec![vec![0, 5], vec![1, 1]]))],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::OutOfRange { value: 5, ref op, .. } if op == "join"));
    }

    #[test]
    fn size_mismatch_and_duplicates() {
        let carrier = Carrier::new(["0", "1"]).unwrap();
        let err = build_structure(
            "bad",
            carrier.clone(),
            vec![("join".into(), RawOp::Binary(vec![vec![0, 1, 1], vec![1, 1, 1]]))],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::SizeMismatch { expected: 2, found: 3, .. }));

        let err = build_structure(
            "dup",
            carrier,
            vec![
                ("comp".into(), RawOp::Unary(vec![1, 0])),
                ("comp".into(), RawOp::Unary(vec![1, 0])),
            ],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateName(ref n) if n == "comp"));

        assert!(matches!(
            Carrier::new(["a", "a"]),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            Carrier::new(Vec::<String>::new()),
            Err(Error::EmptyCarrier)
        ));
    }

    #[test]
    fn relabel_round_trip() {
        let op = BinaryOp::from_fn(3, |x, y| x.max(y));
        let perm = [2, 0, 1];
        let inv = [1, 2, 0];
        assert_eq!(op.relabeled(&perm).relabeled(&inv), op);
    }

    #[test]
    fn covers_of_a_chain() {
        let ord = OrderRelation::from_fn(3, |x, y| x <= y).unwrap();
        assert_eq!(ord.covers(), vec![(0, 1), (1, 2)]);
        assert!(OrderRelation::from_fn(2, |_, _| true).is_err());
    }
}
