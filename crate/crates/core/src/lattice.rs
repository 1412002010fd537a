//! Lattices given by join/meet tables and the checks shared by every
//! lattice-based structure.

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::table::{Algebra, BinaryOp, Carrier, Elem, Operation, OrderRelation, UnaryOp};

/// A pair of tables read as (join, meet). Nothing is assumed about them until checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    join: BinaryOp,
    meet: BinaryOp,
}

impl Lattice {
    pub fn new(join: BinaryOp, meet: BinaryOp) -> Result<Self> {
        if join.size() != meet.size() {
            return Err(Error::CarrierMismatch {
                left: join.size(),
                right: meet.size(),
            });
        }
        Ok(Lattice { join, meet })
    }

    pub fn size(&self) -> usize {
        self.join.size()
    }

    pub fn join(&self) -> &BinaryOp {
        &self.join
    }

    pub fn meet(&self) -> &BinaryOp {
        &self.meet
    }

    /// `x <= y` iff `x ∧ y = x`.
    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.meet.get(x, y) == x
    }

    pub fn relabeled(&self, perm: &[Elem]) -> Self {
        Lattice {
            join: self.join.relabeled(perm),
            meet: self.meet.relabeled(perm),
        }
    }
}

/// `x <= y` iff `meet(x, y) = x`, verified to be a partial order.
pub fn order_from_meet(meet: &BinaryOp) -> Result<OrderRelation> {
    OrderRelation::from_fn(meet.size(), |x, y| meet.get(x, y) == x)
}

/// `x <= y` iff `join(x, y) = y`, verified to be a partial order.
pub fn order_from_join(join: &BinaryOp) -> Result<OrderRelation> {
    OrderRelation::from_fn(join.size(), |x, y| join.get(x, y) == y)
}

/// Idempotency, commutativity, associativity and both absorption laws.
pub fn is_lattice(carrier: &Carrier, l: &Lattice) -> CheckReport {
    let mut r = CheckReport::new(carrier);
    lattice_laws(&mut r, l);
    r
}

fn lattice_laws(r: &mut CheckReport, l: &Lattice) {
    let (j, m) = (&l.join, &l.meet);
    r.check("join-idempotent", |[x]| j.get(x, x) == x);
    r.check("join-commutative", |[x, y]| j.get(x, y) == j.get(y, x));
    r.check("join-associative", |[x, y, z]| {
        j.get(j.get(x, y), z) == j.get(x, j.get(y, z))
    });
    r.check("meet-idempotent", |[x]| m.get(x, x) == x);
    r.check("meet-commutative", |[x, y]| m.get(x, y) == m.get(y, x));
    r.check("meet-associative", |[x, y, z]| {
        m.get(m.get(x, y), z) == m.get(x, m.get(y, z))
    });
    r.check("absorption-join", |[x, y]| j.get(x, m.get(x, y)) == x);
    r.check("absorption-meet", |[x, y]| m.get(x, j.get(x, y)) == x);
}

/// A lattice with designated bottom and top constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundedLattice {
    carrier: Carrier,
    lattice: Lattice,
    bottom: Elem,
    top: Elem,
}

impl BoundedLattice {
    pub fn new(
        carrier: Carrier,
        join: BinaryOp,
        meet: BinaryOp,
        bottom: Elem,
        top: Elem,
    ) -> Result<Self> {
        let n = carrier.size();
        for size in [join.size(), meet.size()] {
            if size != n {
                return Err(Error::CarrierMismatch {
                    left: n,
                    right: size,
                });
            }
        }
        for c in [bottom, top] {
            if c >= n {
                return Err(Error::OutOfRange {
                    op: "bound".into(),
                    value: c,
                    size: n,
                });
            }
        }
        Ok(BoundedLattice {
            carrier,
            lattice: Lattice { join, meet },
            bottom,
            top,
        })
    }

    /// Derive join and meet from a partial order with least and greatest elements.
    pub fn from_order(carrier: Carrier, order: &OrderRelation) -> Result<Self> {
        let n = carrier.size();
        if order.size() != n {
            return Err(Error::CarrierMismatch {
                left: n,
                right: order.size(),
            });
        }
        let bound = |upper: bool, x: Elem, y: Elem| -> Option<Elem> {
            let rel = |a, b| if upper { order.leq(a, b) } else { order.leq(b, a) };
            let candidates: Vec<Elem> = (0..n).filter(|&z| rel(x, z) && rel(y, z)).collect();
            candidates
                .iter()
                .copied()
                .find(|&z| candidates.iter().all(|&w| rel(z, w)))
        };
        let mut join = Vec::with_capacity(n * n);
        let mut meet = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                join.push(bound(true, x, y).ok_or(Error::NotALattice { witness: vec![x, y] })?);
                meet.push(bound(false, x, y).ok_or(Error::NotALattice { witness: vec![x, y] })?);
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|y| order.leq(b, y)));
        let top = (0..n).find(|&t| (0..n).all(|y| order.leq(y, t)));
        let (bottom, top) = bottom
            .zip(top)
            .ok_or(Error::NotALattice { witness: vec![] })?;
        Ok(BoundedLattice {
            carrier,
            lattice: Lattice {
                join: BinaryOp::from_flat(n, join)?,
                meet: BinaryOp::from_flat(n, meet)?,
            },
            bottom,
            top,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn join(&self) -> &BinaryOp {
        &self.lattice.join
    }

    pub fn meet(&self) -> &BinaryOp {
        &self.lattice.meet
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.lattice.leq(x, y)
    }

    pub fn order(&self) -> Result<OrderRelation> {
        order_from_meet(self.meet())
    }

    pub fn with_carrier(mut self, carrier: Carrier) -> Result<Self> {
        if carrier.size() != self.size() {
            return Err(Error::CarrierMismatch {
                left: self.size(),
                right: carrier.size(),
            });
        }
        self.carrier = carrier;
        Ok(self)
    }

    pub fn relabeled(&self, perm: &[Elem]) -> Self {
        BoundedLattice {
            carrier: self.carrier.relabeled(perm),
            lattice: self.lattice.relabeled(perm),
            bottom: perm[self.bottom],
            top: perm[self.top],
        }
    }

    pub fn to_algebra(&self, name: &str) -> Algebra {
        Algebra::from_parts(
            name,
            self.carrier.clone(),
            vec![
                ("join".into(), Operation::Binary(self.join().clone())),
                ("meet".into(), Operation::Binary(self.meet().clone())),
            ],
            vec![("bottom".into(), self.bottom), ("top".into(), self.top)],
        )
        .expect("tables validated on construction")
    }

    pub fn from_algebra(a: &Algebra) -> Result<Self> {
        BoundedLattice::new(
            a.carrier().clone(),
            a.binary("join")?.clone(),
            a.binary("meet")?.clone(),
            a.constant("bottom")?,
            a.constant("top")?,
        )
    }
}

/// Lattice laws plus `x ∨ 0 = x` and `x ∧ 1 = x`.
pub fn is_bounded_lattice(s: &BoundedLattice) -> CheckReport {
    let mut r = CheckReport::new(&s.carrier);
    lattice_laws(&mut r, &s.lattice);
    let (j, m) = (s.join(), s.meet());
    r.check("join-bottom", |[x]| j.get(x, s.bottom) == x);
    r.check("meet-top", |[x]| m.get(x, s.top) == x);
    r
}

/// `(x')' = x` for all `x`, and `x <= y` implies `y' <= x'`.
pub fn is_antitone_involution(s: &BoundedLattice, u: &UnaryOp) -> CheckReport {
    let mut r = CheckReport::new(&s.carrier);
    r.check("involution", |[x]| u.get(u.get(x)) == x);
    r.check("antitone", |[x, y]| !s.leq(x, y) || s.leq(u.get(y), u.get(x)));
    r
}
