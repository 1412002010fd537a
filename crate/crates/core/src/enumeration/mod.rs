//! Isomorphism-free enumeration of small lattices and ortholattices, and the
//! finite model search used to probe independence of the coupled axioms.

mod lattices;
mod search;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::iso::canonical_labeling;
use crate::lattice::BoundedLattice;
use crate::ortho::OrthoLattice;
use crate::table::{Carrier, Elem};

pub use lattices::{lattices_of_size, orthocomplementations, ortholattices_of_size, MAX_SIZE};
pub use search::{models_of_size, search_independence, AxiomRef, CoupledAxiom, SearchOutcome, SearchTask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureClass {
    Lattice,
    Ortholattice,
    Orthomodular,
}

impl StructureClass {
    pub fn short_name(self) -> &'static str {
        match self {
            StructureClass::Lattice => "lattice",
            StructureClass::Ortholattice => "ol",
            StructureClass::Orthomodular => "oml",
        }
    }
}

impl FromStr for StructureClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lattice" | "bounded-lattice" => Ok(StructureClass::Lattice),
            "ol" | "ortholattice" => Ok(StructureClass::Ortholattice),
            "oml" | "orthomodular" => Ok(StructureClass::Orthomodular),
            other => Err(Error::InvalidTask(format!("unknown structure class `{other}`"))),
        }
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationTask {
    class: StructureClass,
    max_size: usize,
    canonical_only: bool,
}

impl EnumerationTask {
    pub fn new(class: StructureClass, max_size: usize) -> Result<Self> {
        if max_size == 0 {
            return Err(Error::InvalidTask("max size must be at least 1".into()));
        }
        if max_size > MAX_SIZE {
            return Err(Error::InvalidTask(format!(
                "max size {max_size} exceeds the supported bound {MAX_SIZE}"
            )));
        }
        Ok(EnumerationTask {
            class,
            max_size,
            canonical_only: true,
        })
    }

    /// When false, representatives are relabelled into a graded display
    /// order instead of the canonical one. Still one per class.
    pub fn canonical_only(mut self, yes: bool) -> Self {
        self.canonical_only = yes;
        self
    }

    pub fn class(&self) -> StructureClass {
        self.class
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn is_canonical_only(&self) -> bool {
        self.canonical_only
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumerated {
    Lattice(BoundedLattice),
    Ortho(OrthoLattice),
}

impl Enumerated {
    pub fn size(&self) -> usize {
        match self {
            Enumerated::Lattice(l) => l.size(),
            Enumerated::Ortho(o) => o.size(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            Enumerated::Lattice(l) => l.carrier(),
            Enumerated::Ortho(o) => o.carrier(),
        }
    }

    pub fn to_algebra(&self, name: &str) -> crate::table::Algebra {
        match self {
            Enumerated::Lattice(l) => l.to_algebra(name),
            Enumerated::Ortho(o) => o.to_algebra(name),
        }
    }

    pub fn as_ortho(&self) -> Option<&OrthoLattice> {
        match self {
            Enumerated::Ortho(o) => Some(o),
            Enumerated::Lattice(_) => None,
        }
    }
}

/// Ordered stream of representatives. Each size is computed in parallel when
/// first reached; emission order is size, then canonical code.
pub struct Enumeration {
    task: EnumerationTask,
    next_size: usize,
    buffer: VecDeque<Enumerated>,
}

impl Iterator for Enumeration {
    type Item = Enumerated;

    fn next(&mut self) -> Option<Enumerated> {
        while self.buffer.is_empty() {
            if self.next_size > self.task.max_size {
                return None;
            }
            let n = self.next_size;
            self.next_size += 1;
            self.buffer = of_size(&self.task, n).into();
        }
        self.buffer.pop_front()
    }
}

pub fn enumerate(task: &EnumerationTask) -> Enumeration {
    Enumeration {
        task: task.clone(),
        next_size: 1,
        buffer: VecDeque::new(),
    }
}

/// All representatives of exactly size `n` for the task's class.
pub fn of_size(task: &EnumerationTask, n: usize) -> Vec<Enumerated> {
    match task.class {
        StructureClass::Lattice => lattices_of_size(n)
            .into_iter()
            .map(|(_, l)| {
                if task.canonical_only {
                    Enumerated::Lattice(l)
                } else {
                    let perm = display_order(&l);
                    let l = l.relabeled(&perm);
                    let names = Carrier::bounded_labels(n);
                    Enumerated::Lattice(l.with_carrier(names).expect("same size"))
                }
            })
            .collect(),
        StructureClass::Ortholattice | StructureClass::Orthomodular => {
            let oml = task.class == StructureClass::Orthomodular;
            ortholattices_of_size(n, oml)
                .into_iter()
                .map(|(_, o)| {
                    if task.canonical_only {
                        Enumerated::Ortho(o)
                    } else {
                        let perm = display_order(o.bounded());
                        let o = o.relabeled(&perm);
                        let names = lattices::complement_pair_labels(o.complement());
                        Enumerated::Ortho(o.with_carrier(names).expect("same size"))
                    }
                })
                .collect()
        }
    }
}

/// Canonical code of a bounded lattice and the lattice relabelled into
/// canonical order (names positional).
pub fn canonicalize_lattice(l: &BoundedLattice) -> (Vec<u8>, BoundedLattice) {
    let (code, perm) = canonical_labeling(&[l.join(), l.meet()], &[], l.bottom(), l.top());
    let c = l.relabeled(&perm);
    let names = Carrier::bounded_labels(l.size());
    (code, c.with_carrier(names).expect("same size"))
}

/// Canonical code of an ortholattice and the ortholattice relabelled into
/// canonical order, complement pairs named `a, a'`, ...
pub fn canonicalize_ortho(o: &OrthoLattice) -> (Vec<u8>, OrthoLattice) {
    let (code, perm) = canonical_labeling(
        &[o.join(), o.meet()],
        &[o.complement()],
        o.bottom(),
        o.top(),
    );
    let c = o.relabeled(&perm);
    let names = lattices::complement_pair_labels(c.complement());
    (code, c.with_carrier(names).expect("same size"))
}

/// Counts per size `1..=max_size`.
pub fn count_by_size(task: &EnumerationTask) -> Vec<(usize, usize)> {
    (1..=task.max_size)
        .map(|n| {
            let count = match task.class {
                StructureClass::Lattice => lattices_of_size(n).len(),
                StructureClass::Ortholattice => ortholattices_of_size(n, false).len(),
                StructureClass::Orthomodular => ortholattices_of_size(n, true).len(),
            };
            (n, count)
        })
        .collect()
}

/// Permutation (old index to new) sorting elements by height, ties by index.
fn display_order(l: &BoundedLattice) -> Vec<Elem> {
    let n = l.size();
    let mut height = vec![0usize; n];
    // indices of a canonical form need not be a linear extension, so relax
    // until stable
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for y in 0..n {
                if x != y && l.leq(x, y) && height[y] < height[x] + 1 {
                    height[y] = height[x] + 1;
                    changed = true;
                }
            }
        }
    }
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by_key(|&x| (height[x], x));
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    perm
}
