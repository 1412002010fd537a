//! Finite model search for triples that satisfy one set of the coupled axioms
//! while violating another.
//!
//! Every axiom clause is an equation over the signature
//! `(∨, ·, ∧, ∗, α, 0, 1, 0₂, 1₂)`. The search fills table cells one at a
//! time; each ground instance of an enforced equation waits on the first
//! unfilled cell it reads and is re-evaluated when that cell is assigned.
//! When R1 is enforced the `(∨, ∧)` tables are taken from the lattice
//! enumeration instead of being searched.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::lattices::{lattices_of_size, MAX_SIZE};
use crate::coupled::CoupledTriple;
use crate::error::{Error, Result};
use crate::lattice::BoundedLattice;
use crate::near_semiring::NearSemiring;
use crate::table::{BinaryOp, Carrier, UnaryOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoupledAxiom {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl CoupledAxiom {
    pub const ALL: [CoupledAxiom; 6] = [
        CoupledAxiom::R1,
        CoupledAxiom::R2,
        CoupledAxiom::R3,
        CoupledAxiom::R4,
        CoupledAxiom::R5,
        CoupledAxiom::R6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CoupledAxiom::R1 => "R1",
            CoupledAxiom::R2 => "R2",
            CoupledAxiom::R3 => "R3",
            CoupledAxiom::R4 => "R4",
            CoupledAxiom::R5 => "R5",
            CoupledAxiom::R6 => "R6",
        }
    }
}

impl FromStr for CoupledAxiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CoupledAxiom::ALL
            .into_iter()
            .find(|a| a.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidTask(format!("unknown axiom `{s}`")))
    }
}

/// A whole axiom `R2`, or one of its clauses `R2.right-distributive`. Clause
/// names are the entry ids of the corresponding checker reports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomRef {
    Axiom(CoupledAxiom),
    Clause(CoupledAxiom, String),
}

impl AxiomRef {
    pub fn axiom(&self) -> CoupledAxiom {
        match self {
            AxiomRef::Axiom(a) | AxiomRef::Clause(a, _) => *a,
        }
    }

    /// Parses a comma separated list; empty input gives an empty list.
    pub fn parse_list(s: &str) -> Result<Vec<AxiomRef>> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }

    fn atoms(&self, table: &[Atom]) -> Vec<usize> {
        table
            .iter()
            .enumerate()
            .filter(|(_, atom)| match self {
                AxiomRef::Axiom(a) => atom.axiom == *a,
                AxiomRef::Clause(a, c) => atom.axiom == *a && atom.clause == c,
            })
            .map(|(i, _)| i)
            .collect()
    }
}

impl FromStr for AxiomRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = match s.split_once('.') {
            None => AxiomRef::Axiom(s.parse()?),
            Some((a, c)) => AxiomRef::Clause(a.parse()?, c.to_string()),
        };
        if r.atoms(&atom_table()).is_empty() {
            return Err(Error::InvalidTask(format!("unknown clause `{s}`")));
        }
        Ok(r)
    }
}

impl fmt::Display for AxiomRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomRef::Axiom(a) => f.write_str(a.label()),
            AxiomRef::Clause(a, c) => write!(f, "{}.{c}", a.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTask {
    enforce: Vec<AxiomRef>,
    violate: Vec<AxiomRef>,
    max_size: usize,
}

impl SearchTask {
    /// Rejects tasks where some violated item is already implied by the
    /// enforced set, such as enforcing R2 and violating `R2.plus-neutral`.
    pub fn new(enforce: Vec<AxiomRef>, violate: Vec<AxiomRef>, max_size: usize) -> Result<Self> {
        if max_size == 0 || max_size > MAX_SIZE {
            return Err(Error::InvalidTask(format!(
                "max size must lie in 1..={MAX_SIZE}, got {max_size}"
            )));
        }
        let table = atom_table();
        let enforced: BTreeSet<usize> = enforce.iter().flat_map(|r| r.atoms(&table)).collect();
        for v in &violate {
            if v.atoms(&table).iter().all(|a| enforced.contains(a)) {
                return Err(Error::InvalidTask(format!(
                    "`{v}` is both enforced and violated"
                )));
            }
        }
        Ok(SearchTask {
            enforce,
            violate,
            max_size,
        })
    }

    pub fn enforce(&self) -> &[AxiomRef] {
        &self.enforce
    }

    pub fn violate(&self) -> &[AxiomRef] {
        &self.violate
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(CoupledTriple),
    Exhausted { max_size: usize },
}

impl SearchOutcome {
    pub fn triple(&self) -> Option<&CoupledTriple> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// Smallest triple meeting the task, trying sizes `1..=max_size` in turn.
/// Complete up to the bound; the answer does not depend on thread count.
pub fn search_independence(task: &SearchTask) -> SearchOutcome {
    let table = atom_table();
    let enforced: BTreeSet<usize> = task.enforce.iter().flat_map(|r| r.atoms(&table)).collect();
    let violate: Vec<Vec<usize>> = task.violate.iter().map(|r| r.atoms(&table)).collect();
    let lattice_fixed = table
        .iter()
        .enumerate()
        .filter(|(_, a)| a.axiom == CoupledAxiom::R1)
        .all(|(i, _)| enforced.contains(&i));
    let equations: Vec<&Equation> = enforced
        .iter()
        .flat_map(|&i| table[i].equations.iter())
        .collect();
    let problem = Problem {
        table: &table,
        equations,
        violate,
    };

    for n in 1..=task.max_size {
        let found = if lattice_fixed {
            lattices_of_size(n)
                .par_iter()
                .find_map_first(|(_, l)| problem.solve(n, Some(l)))
        } else {
            problem.solve(n, None)
        };
        if let Some(cells) = found {
            return SearchOutcome::Found(problem.triple(n, &cells, lattice_fixed));
        }
    }
    SearchOutcome::Exhausted {
        max_size: task.max_size,
    }
}

/// Every model of size `n` meeting the task. With R1 enforced the lattice
/// tables range over canonical representatives and everything else is
/// listed in full; otherwise least-number symmetry breaking applies, so
/// the list is complete up to isomorphism but may contain isomorphic copies.
pub fn models_of_size(task: &SearchTask, n: usize) -> Vec<CoupledTriple> {
    let table = atom_table();
    let enforced: BTreeSet<usize> = task.enforce.iter().flat_map(|r| r.atoms(&table)).collect();
    let violate: Vec<Vec<usize>> = task.violate.iter().map(|r| r.atoms(&table)).collect();
    let lattice_fixed = table
        .iter()
        .enumerate()
        .filter(|(_, a)| a.axiom == CoupledAxiom::R1)
        .all(|(i, _)| enforced.contains(&i));
    let equations: Vec<&Equation> = enforced
        .iter()
        .flat_map(|&i| table[i].equations.iter())
        .collect();
    let problem = Problem {
        table: &table,
        equations,
        violate,
    };
    let cells: Vec<Vec<u8>> = if lattice_fixed {
        lattices_of_size(n)
            .par_iter()
            .flat_map_iter(|(_, l)| problem.solve_all(n, Some(l)))
            .collect()
    } else {
        problem.solve_all(n, None)
    };
    cells
        .iter()
        .map(|c| problem.triple(n, c, lattice_fixed))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op2 {
    Join = 0,
    Times = 1,
    Meet = 2,
    Star = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Const {
    Zero = 0,
    One = 1,
    Zero2 = 2,
    One2 = 3,
}

#[derive(Debug, Clone)]
enum Term {
    Var(usize),
    Const(Const),
    Alpha(Box<Term>),
    App(Op2, Box<Term>, Box<Term>),
}

#[derive(Debug, Clone)]
struct Equation {
    arity: u32,
    lhs: Term,
    rhs: Term,
}

#[derive(Debug, Clone)]
struct Atom {
    axiom: CoupledAxiom,
    clause: &'static str,
    equations: Vec<Equation>,
}

fn x() -> Term {
    Term::Var(0)
}

fn y() -> Term {
    Term::Var(1)
}

fn z() -> Term {
    Term::Var(2)
}

fn c(k: Const) -> Term {
    Term::Const(k)
}

fn ap(op: Op2, a: Term, b: Term) -> Term {
    Term::App(op, Box::new(a), Box::new(b))
}

fn al(a: Term) -> Term {
    Term::Alpha(Box::new(a))
}

fn eq(arity: u32, lhs: Term, rhs: Term) -> Equation {
    Equation { arity, lhs, rhs }
}

fn atom(axiom: CoupledAxiom, clause: &'static str, equations: Vec<Equation>) -> Atom {
    Atom {
        axiom,
        clause,
        equations,
    }
}

fn near_semiring_atoms(
    axiom: CoupledAxiom,
    plus: Op2,
    times: Op2,
    zero: Const,
    one: Const,
) -> Vec<Atom> {
    let p = |a, b| ap(plus, a, b);
    let t = |a, b| ap(times, a, b);
    vec![
        atom(axiom, "plus-commutative", vec![eq(2, p(x(), y()), p(y(), x()))]),
        atom(
            axiom,
            "plus-associative",
            vec![eq(3, p(p(x(), y()), z()), p(x(), p(y(), z())))],
        ),
        atom(axiom, "plus-neutral", vec![eq(1, p(x(), c(zero)), x())]),
        atom(
            axiom,
            "times-neutral",
            vec![eq(1, t(x(), c(one)), x()), eq(1, t(c(one), x()), x())],
        ),
        atom(
            axiom,
            "right-distributive",
            vec![eq(3, t(p(x(), y()), z()), p(t(x(), z()), t(y(), z())))],
        ),
        atom(
            axiom,
            "zero-annihilates",
            vec![
                eq(1, t(x(), c(zero)), c(zero)),
                eq(1, t(c(zero), x()), c(zero)),
            ],
        ),
    ]
}

/// Every clause of R1–R6 as equations, ids matching the checker reports.
fn atom_table() -> Vec<Atom> {
    use CoupledAxiom::*;
    use Op2::*;
    let j = |a, b| ap(Join, a, b);
    let m = |a, b| ap(Meet, a, b);
    let t = |a, b| ap(Times, a, b);
    let s = |a, b| ap(Star, a, b);

    let mut atoms = vec![
        atom(R1, "join-idempotent", vec![eq(1, j(x(), x()), x())]),
        atom(R1, "join-commutative", vec![eq(2, j(x(), y()), j(y(), x()))]),
        atom(
            R1,
            "join-associative",
            vec![eq(3, j(j(x(), y()), z()), j(x(), j(y(), z())))],
        ),
        atom(R1, "meet-idempotent", vec![eq(1, m(x(), x()), x())]),
        atom(R1, "meet-commutative", vec![eq(2, m(x(), y()), m(y(), x()))]),
        atom(
            R1,
            "meet-associative",
            vec![eq(3, m(m(x(), y()), z()), m(x(), m(y(), z())))],
        ),
        atom(R1, "absorption-join", vec![eq(2, j(x(), m(x(), y())), x())]),
        atom(R1, "absorption-meet", vec![eq(2, m(x(), j(x(), y())), x())]),
    ];
    atoms.extend(near_semiring_atoms(R2, Join, Times, Const::Zero, Const::One));
    atoms.push(atom(R2, "plus-is-join", vec![eq(2, j(x(), y()), j(x(), y()))]));
    atoms.push(atom(
        R2,
        "product-below-right",
        vec![eq(2, m(t(x(), y()), y()), t(x(), y()))],
    ));
    atoms.extend(near_semiring_atoms(R3, Meet, Star, Const::Zero2, Const::One2));
    atoms.push(atom(R3, "plus-is-meet", vec![eq(2, m(x(), y()), m(x(), y()))]));
    atoms.push(atom(
        R3,
        "product-above-right",
        vec![eq(2, m(y(), s(x(), y())), y())],
    ));
    atoms.extend([
        atom(R4, "involution", vec![eq(1, al(al(x())), x())]),
        atom(
            R4,
            "plus-preserved",
            vec![eq(2, al(j(x(), y())), m(al(x()), al(y())))],
        ),
        atom(
            R4,
            "times-preserved",
            vec![eq(2, al(t(x(), y())), s(al(x()), al(y())))],
        ),
        atom(
            R4,
            "zero-preserved",
            vec![eq(0, al(c(Const::Zero)), c(Const::Zero2))],
        ),
        atom(
            R4,
            "one-preserved",
            vec![eq(0, al(c(Const::One)), c(Const::One2))],
        ),
        atom(R5, "R5", vec![eq(2, j(m(x(), al(y())), y()), s(x(), y()))]),
        atom(R6, "R6", vec![eq(2, s(y(), m(x(), y())), y())]),
    ]);
    atoms
}

const UNSET: u8 = u8::MAX;

/// Cell layout: the four binary tables row-major, then α, then the constants.
struct Layout {
    n: usize,
}

impl Layout {
    fn binary(&self, op: Op2, a: u8, b: u8) -> usize {
        (op as usize * self.n + a as usize) * self.n + b as usize
    }

    fn alpha(&self, a: u8) -> usize {
        4 * self.n * self.n + a as usize
    }

    fn constant(&self, k: Const) -> usize {
        4 * self.n * self.n + self.n + k as usize
    }

    fn cells(&self) -> usize {
        4 * self.n * self.n + self.n + 4
    }

    /// Assignment order with the lattice tables given: constants, α, ∗, ·.
    fn fixed_lattice_order(&self) -> Vec<usize> {
        let n = self.n;
        let table = |op| (0..n * n).map(move |i| op as usize * n * n + i);
        let mut order: Vec<usize> = table(Op2::Join).chain(table(Op2::Meet)).collect();
        order.extend(self.constants());
        order.extend((0..n as u8).map(|a| self.alpha(a)));
        order.extend(table(Op2::Star));
        order.extend(table(Op2::Times));
        order
    }

    /// Constants, then every cell by its largest argument, so the elements
    /// mentioned so far always form an initial segment.
    fn free_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.constants().to_vec();
        for k in 0..self.n as u8 {
            for op in [Op2::Join, Op2::Meet] {
                order.extend(self.cells_with_max(op, k));
            }
            order.push(self.alpha(k));
            for op in [Op2::Star, Op2::Times] {
                order.extend(self.cells_with_max(op, k));
            }
        }
        order
    }

    fn cells_with_max(&self, op: Op2, k: u8) -> Vec<usize> {
        (0..=k)
            .flat_map(|a| (0..=k).map(move |b| (a, b)))
            .filter(|&(a, b)| a.max(b) == k)
            .map(|(a, b)| self.binary(op, a, b))
            .collect()
    }

    fn constants(&self) -> [usize; 4] {
        [Const::Zero, Const::One, Const::Zero2, Const::One2].map(|k| self.constant(k))
    }

    /// Largest element a cell reads as an argument, if any.
    fn max_argument(&self, cell: usize) -> Option<usize> {
        let n = self.n;
        if cell < 4 * n * n {
            let (a, b) = ((cell / n) % n, cell % n);
            Some(a.max(b))
        } else if cell < 4 * n * n + n {
            Some(cell - 4 * n * n)
        } else {
            None
        }
    }

    fn eval(&self, cells: &[u8], t: &Term, vars: &[u8; 3]) -> std::result::Result<u8, usize> {
        let read = |cell: usize| match cells[cell] {
            UNSET => Err(cell),
            v => Ok(v),
        };
        match t {
            Term::Var(i) => Ok(vars[*i]),
            Term::Const(k) => read(self.constant(*k)),
            Term::Alpha(a) => read(self.alpha(self.eval(cells, a, vars)?)),
            Term::App(op, a, b) => {
                let a = self.eval(cells, a, vars)?;
                let b = self.eval(cells, b, vars)?;
                read(self.binary(*op, a, b))
            }
        }
    }

    fn status(&self, cells: &[u8], e: &Equation, vars: &[u8; 3]) -> Status {
        match (self.eval(cells, &e.lhs, vars), self.eval(cells, &e.rhs, vars)) {
            (Err(cell), _) | (_, Err(cell)) => Status::Blocked(cell),
            (Ok(l), Ok(r)) if l == r => Status::Holds,
            _ => Status::Fails,
        }
    }

    fn holds_everywhere(&self, cells: &[u8], e: &Equation) -> bool {
        tuples(self.n, e.arity).all(|v| self.status(cells, e, &v) == Status::Holds)
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Status {
    Holds,
    Fails,
    Blocked(usize),
}

fn tuples(n: usize, arity: u32) -> impl Iterator<Item = [u8; 3]> {
    (0..n.pow(arity)).map(move |mut k| {
        let mut v = [0u8; 3];
        for slot in v.iter_mut().take(arity as usize).rev() {
            *slot = (k % n) as u8;
            k /= n;
        }
        v
    })
}

struct Problem<'a> {
    table: &'a [Atom],
    equations: Vec<&'a Equation>,
    violate: Vec<Vec<usize>>,
}

impl Problem<'_> {
    /// First complete assignment (in search order) meeting the task, if any.
    fn solve(&self, n: usize, lattice: Option<&BoundedLattice>) -> Option<Vec<u8>> {
        let mut engine = self.engine(n, lattice, false)?;
        engine.search(0, None).then_some(engine.cells)
    }

    /// Every complete assignment meeting the task, in search order.
    fn solve_all(&self, n: usize, lattice: Option<&BoundedLattice>) -> Vec<Vec<u8>> {
        let Some(mut engine) = self.engine(n, lattice, true) else {
            return Vec::new();
        };
        engine.search(0, None);
        engine.collected.unwrap_or_default()
    }

    /// Engine with the lattice tables (if given) filled in and every ground
    /// instance watching its first open cell; `None` if the prefill already
    /// breaks an enforced equation.
    fn engine(&self, n: usize, lattice: Option<&BoundedLattice>, collect: bool) -> Option<Engine<'_>> {
        let layout = Layout { n };
        let mut cells = vec![UNSET; layout.cells()];
        if let Some(l) = lattice {
            for a in 0..n {
                for b in 0..n {
                    cells[layout.binary(Op2::Join, a as u8, b as u8)] = l.join().get(a, b) as u8;
                    cells[layout.binary(Op2::Meet, a as u8, b as u8)] = l.meet().get(a, b) as u8;
                }
            }
        }
        let mut instances = Vec::new();
        let mut watch = vec![Vec::new(); layout.cells()];
        for (e, eq) in self.equations.iter().enumerate() {
            for v in tuples(n, eq.arity) {
                match layout.status(&cells, eq, &v) {
                    Status::Holds => {}
                    Status::Fails => return None,
                    Status::Blocked(cell) => {
                        watch[cell].push(instances.len() as u32);
                        instances.push((e, v));
                    }
                }
            }
        }
        let symmetric = lattice.is_none();
        let order = if symmetric {
            layout.free_order()
        } else {
            layout.fixed_lattice_order()
        };
        Some(Engine {
            problem: self,
            layout,
            order,
            symmetric,
            cells,
            instances,
            watch,
            collected: collect.then(Vec::new),
        })
    }

    fn accepts(&self, layout: &Layout, cells: &[u8]) -> bool {
        self.violate.iter().all(|group| {
            group.iter().any(|&a| {
                self.table[a]
                    .equations
                    .iter()
                    .any(|e| !layout.holds_everywhere(cells, e))
            })
        })
    }

    fn triple(&self, n: usize, cells: &[u8], bounded: bool) -> CoupledTriple {
        let layout = Layout { n };
        let carrier = if bounded {
            Carrier::bounded_labels(n)
        } else {
            Carrier::numbered(n)
        };
        let table = |op| {
            BinaryOp::from_fn(n, |a, b| cells[layout.binary(op, a as u8, b as u8)] as usize)
        };
        let k = |c| cells[layout.constant(c)] as usize;
        let first = NearSemiring::new(
            carrier.clone(),
            table(Op2::Join),
            table(Op2::Times),
            k(Const::Zero),
            k(Const::One),
        )
        .expect("cells are in range");
        let second = NearSemiring::new(
            carrier,
            table(Op2::Meet),
            table(Op2::Star),
            k(Const::Zero2),
            k(Const::One2),
        )
        .expect("cells are in range");
        let alpha = UnaryOp::from_fn(n, |a| cells[layout.alpha(a as u8)] as usize);
        CoupledTriple::new(first, second, alpha).expect("one carrier")
    }
}

struct Engine<'a> {
    problem: &'a Problem<'a>,
    layout: Layout,
    order: Vec<usize>,
    /// No element is distinguished yet, so least-number symmetry breaking
    /// applies: a cell may only take values up to one past the largest
    /// element mentioned so far.
    symmetric: bool,
    cells: Vec<u8>,
    instances: Vec<(usize, [u8; 3])>,
    watch: Vec<Vec<u32>>,
    /// When present, accepted assignments are stored and the search goes on.
    collected: Option<Vec<Vec<u8>>>,
}

impl Engine<'_> {
    fn search(&mut self, level: usize, mentioned: Option<usize>) -> bool {
        let Some(&cell) = self.order.get(level) else {
            let accepted = self.problem.accepts(&self.layout, &self.cells);
            return match &mut self.collected {
                Some(found) => {
                    if accepted {
                        found.push(self.cells.clone());
                    }
                    false
                }
                None => accepted,
            };
        };
        if self.cells[cell] != UNSET {
            return self.search(level + 1, mentioned);
        }
        let mentioned = mentioned.max(self.layout.max_argument(cell));
        let top = if self.symmetric {
            mentioned.map_or(0, |m| m + 1).min(self.layout.n - 1)
        } else {
            self.layout.n - 1
        };
        for v in 0..=top as u8 {
            self.cells[cell] = v;
            if let Some(moved) = self.propagate(cell) {
                if self.search(level + 1, mentioned.max(Some(v as usize))) {
                    return true;
                }
                self.undo(cell, moved);
            }
        }
        self.cells[cell] = UNSET;
        false
    }

    /// Re-evaluates the instances waiting on `cell`. On success returns the
    /// cells they moved on to; on failure restores the watch lists.
    fn propagate(&mut self, cell: usize) -> Option<(Vec<u32>, Vec<usize>)> {
        let waiting = std::mem::take(&mut self.watch[cell]);
        let mut moved = Vec::new();
        for &i in &waiting {
            let (e, v) = self.instances[i as usize];
            match self
                .layout
                .status(&self.cells, self.problem.equations[e], &v)
            {
                Status::Holds => {}
                Status::Blocked(next) => {
                    self.watch[next].push(i);
                    moved.push(next);
                }
                Status::Fails => {
                    self.undo(cell, (waiting, moved));
                    return None;
                }
            }
        }
        Some((waiting, moved))
    }

    fn undo(&mut self, cell: usize, (waiting, moved): (Vec<u32>, Vec<usize>)) {
        for next in moved.into_iter().rev() {
            self.watch[next].pop();
        }
        self.watch[cell] = waiting;
    }
}
