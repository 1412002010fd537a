//! MV-algebras and basic algebras `(A, ⊕, ¬, 0)`, their derived lattice
//! operations, and the coupled semiring of an MV-algebra.

use num_rational::Ratio;

use crate::coupled::CoupledTriple;
use crate::error::{Error, Result};
use crate::near_semiring::NearSemiring;
use crate::ortho::OrthoLattice;
use crate::report::CheckReport;
use crate::table::{Algebra, BinaryOp, Carrier, Elem, Operation, OrderRelation, UnaryOp};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OplusAlgebra {
    carrier: Carrier,
    oplus: BinaryOp,
    neg: UnaryOp,
    zero: Elem,
}

impl OplusAlgebra {
    pub fn new(carrier: Carrier, oplus: BinaryOp, neg: UnaryOp, zero: Elem) -> Result<Self> {
        let n = carrier.size();
        if oplus.size() != n || neg.size() != n {
            return Err(Error::CarrierMismatch {
                left: n,
                right: if oplus.size() != n { oplus.size() } else { neg.size() },
            });
        }
        if zero >= n {
            return Err(Error::OutOfRange {
                op: "zero".into(),
                value: zero,
                size: n,
            });
        }
        Ok(OplusAlgebra {
            carrier,
            oplus,
            neg,
            zero,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn oplus(&self) -> &BinaryOp {
        &self.oplus
    }

    pub fn neg(&self) -> &UnaryOp {
        &self.neg
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    /// `1 := ¬0`.
    pub fn one(&self) -> Elem {
        self.neg.get(self.zero)
    }

    #[inline]
    fn o(&self, x: Elem, y: Elem) -> Elem {
        self.oplus.get(x, y)
    }

    #[inline]
    fn n(&self, x: Elem) -> Elem {
        self.neg.get(x)
    }

    /// `x ∨ y := ¬(¬x ⊕ y) ⊕ y`.
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.o(self.n(self.o(self.n(x), y)), y)
    }

    /// `x ∧ y := ¬(¬x ∨ ¬y)`.
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.n(self.join(self.n(x), self.n(y)))
    }

    /// `x <= y` iff `¬x ⊕ y = 1`.
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.o(self.n(x), y) == self.one()
    }

    pub fn with_oplus(&self, oplus: BinaryOp) -> Result<Self> {
        OplusAlgebra::new(self.carrier.clone(), oplus, self.neg.clone(), self.zero)
    }

    pub fn to_algebra(&self, name: &str) -> Algebra {
        Algebra::from_parts(
            name,
            self.carrier.clone(),
            vec![
                ("oplus".into(), Operation::Binary(self.oplus.clone())),
                ("neg".into(), Operation::Unary(self.neg.clone())),
            ],
            vec![("zero".into(), self.zero)],
        )
        .expect("tables validated on construction")
    }

    pub fn from_algebra(a: &Algebra) -> Result<Self> {
        OplusAlgebra::new(
            a.carrier().clone(),
            a.binary("oplus")?.clone(),
            a.unary("neg")?.clone(),
            a.constant("zero")?,
        )
    }
}

fn lukasiewicz_identity(r: &mut CheckReport, a: &OplusAlgebra) {
    r.check("lukasiewicz-identity", |[x, y]| {
        a.o(a.n(a.o(a.n(x), y)), y) == a.o(a.n(a.o(a.n(y), x)), x)
    });
}

/// Commutative monoid `(A, ⊕, 0)`, `¬¬x = x`, `x ⊕ ¬0 = ¬0`, and
/// `¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x`.
pub fn check_mv_algebra(a: &OplusAlgebra) -> CheckReport {
    let mut r = CheckReport::new(&a.carrier);
    r.check("oplus-commutative", |[x, y]| a.o(x, y) == a.o(y, x));
    r.check("oplus-associative", |[x, y, z]| {
        a.o(a.o(x, y), z) == a.o(x, a.o(y, z))
    });
    r.check("oplus-neutral", |[x]| a.o(x, a.zero) == x);
    r.check("double-negation", |[x]| a.n(a.n(x)) == x);
    r.check("one-absorbs", |[x]| a.o(x, a.one()) == a.one());
    lukasiewicz_identity(&mut r, a);
    r
}

/// `x ⊕ 0 = x`, `¬¬x = x`, the Łukasiewicz identity, and
/// `¬(¬(¬(x ⊕ y) ⊕ y) ⊕ z) ⊕ (x ⊕ z) = 1`.
pub fn check_basic_algebra(a: &OplusAlgebra) -> CheckReport {
    let mut r = CheckReport::new(&a.carrier);
    r.check("oplus-neutral", |[x]| a.o(x, a.zero) == x);
    r.check("double-negation", |[x]| a.n(a.n(x)) == x);
    lukasiewicz_identity(&mut r, a);
    r.check("basic-monotonicity", |[x, y, z]| {
        let inner = a.n(a.o(a.n(a.o(x, y)), y));
        a.o(a.n(a.o(inner, z)), a.o(x, z)) == a.one()
    });
    r
}

/// Order and lattice tables read off a basic algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedLattice {
    pub order: OrderRelation,
    pub join: BinaryOp,
    pub meet: BinaryOp,
}

/// `x <= y` iff `¬x ⊕ y = 1`, with join and meet given by the ⊕/¬ terms.
///
/// Verifies that the order is a partial order, that the term operations are
/// its suprema and infima, and that `x <= y` iff `¬y <= ¬x`.
pub fn derive_order_and_lattice(a: &OplusAlgebra) -> Result<DerivedLattice> {
    let pre = check_basic_algebra(a);
    if !pre.passed() {
        return Err(Error::PrerequisiteFailed(Box::new(pre)));
    }
    let n = a.size();
    let order = OrderRelation::from_fn(n, |x, y| a.leq(x, y))
        .map_err(|e| match e {
            Error::NotAPartialOrder { witness } => Error::InconsistentOrder { witness },
            other => other,
        })?;
    let join = BinaryOp::from_fn(n, |x, y| a.join(x, y));
    let meet = BinaryOp::from_fn(n, |x, y| a.meet(x, y));
    for x in 0..n {
        for y in 0..n {
            let (j, m) = (join.get(x, y), meet.get(x, y));
            let is_sup = order.leq(x, j)
                && order.leq(y, j)
                && (0..n).all(|z| !(order.leq(x, z) && order.leq(y, z)) || order.leq(j, z));
            let is_inf = order.leq(m, x)
                && order.leq(m, y)
                && (0..n).all(|z| !(order.leq(z, x) && order.leq(z, y)) || order.leq(z, m));
            let antitone = order.leq(x, y) == order.leq(a.n(y), a.n(x));
            if !(is_sup && is_inf && antitone) {
                return Err(Error::InconsistentOrder {
                    witness: vec![x, y],
                });
            }
        }
    }
    Ok(DerivedLattice { order, join, meet })
}

/// `x ⊙ y := ¬(¬x ⊕ ¬y)`.
pub fn derive_odot(a: &OplusAlgebra) -> BinaryOp {
    BinaryOp::from_fn(a.size(), |x, y| a.n(a.o(a.n(x), a.n(y))))
}

/// `((A, ∨, ⊙, 0, 1), (A, ∧, ⊕, 1, 0), ¬)` of an MV-algebra.
pub fn build_mv_coupled_semiring(a: &OplusAlgebra) -> Result<CoupledTriple> {
    let r = check_mv_algebra(a);
    if !r.passed() {
        return Err(Error::NotMv(Box::new(r)));
    }
    let lattice = derive_order_and_lattice(a)?;
    let first = NearSemiring::new(
        a.carrier.clone(),
        lattice.join,
        derive_odot(a),
        a.zero,
        a.one(),
    )?;
    let second = NearSemiring::new(
        a.carrier.clone(),
        lattice.meet,
        a.oplus.clone(),
        a.one(),
        a.zero,
    )?;
    CoupledTriple::new(first, second, a.neg.clone())
}

/// The Łukasiewicz chain `{0, 1/(k-1), ..., 1}` with `x ⊕ y = min(1, x + y)`
/// and `¬x = 1 - x`, computed on integer numerators.
pub fn lukasiewicz_chain(k: usize) -> Result<OplusAlgebra> {
    if k < 2 {
        return Err(Error::BadSize(k));
    }
    let top = k - 1;
    let carrier = Carrier::new((0..k).map(|i| Ratio::new(i, top).to_string()))?;
    let oplus = BinaryOp::from_fn(k, |x, y| (x + y).min(top));
    let neg = UnaryOp::from_fn(k, |x| top - x);
    OplusAlgebra::new(carrier, oplus, neg, 0)
}

/// `(L, ⊕, ', 0)` with the Sasaki sum `x ⊕ y = (x ∧ y') ∨ y` of an
/// ortholattice. Basic whenever `l` is orthomodular; MV only when `l` is
/// Boolean.
pub fn sasaki_basic_algebra(l: &OrthoLattice) -> OplusAlgebra {
    OplusAlgebra::new(
        l.carrier().clone(),
        l.sasaki_sum_table(),
        l.complement().clone(),
        l.bottom(),
    )
    .expect("tables share the carrier")
}

/// `(basic and ⊕ associative, MV)` for a basic algebra.
pub fn mv_iff_associative(a: &OplusAlgebra) -> Result<(bool, bool)> {
    let basic = check_basic_algebra(a);
    if !basic.passed() {
        return Err(Error::PrerequisiteFailed(Box::new(basic)));
    }
    let mv = check_mv_algebra(a);
    let associative = mv.get("oplus-associative").is_some_and(|r| r.passed());
    Ok((associative, mv.passed()))
}
