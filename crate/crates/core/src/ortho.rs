//! Ortholattices, the orthomodular law, the commutation relation and the
//! Sasaki operations.

use crate::error::{Error, Result};
use crate::lattice::{is_antitone_involution, is_bounded_lattice, BoundedLattice};
use crate::report::CheckReport;
use crate::table::{Algebra, BinaryOp, Carrier, Elem, Operation, UnaryOp};

/// A bounded lattice with a complementation table. Axioms are not assumed;
/// use [`check_ortholattice`] and [`check_orthomodular`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthoLattice {
    bounded: BoundedLattice,
    complement: UnaryOp,
}

impl OrthoLattice {
    pub fn new(bounded: BoundedLattice, complement: UnaryOp) -> Result<Self> {
        if complement.size() != bounded.size() {
            return Err(Error::CarrierMismatch {
                left: bounded.size(),
                right: complement.size(),
            });
        }
        Ok(OrthoLattice {
            bounded,
            complement,
        })
    }

    pub fn bounded(&self) -> &BoundedLattice {
        &self.bounded
    }

    pub fn carrier(&self) -> &Carrier {
        self.bounded.carrier()
    }

    pub fn size(&self) -> usize {
        self.bounded.size()
    }

    pub fn join(&self) -> &BinaryOp {
        self.bounded.join()
    }

    pub fn meet(&self) -> &BinaryOp {
        self.bounded.meet()
    }

    pub fn complement(&self) -> &UnaryOp {
        &self.complement
    }

    pub fn bottom(&self) -> Elem {
        self.bounded.bottom()
    }

    pub fn top(&self) -> Elem {
        self.bounded.top()
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.bounded.leq(x, y)
    }

    #[inline]
    fn j(&self, x: Elem, y: Elem) -> Elem {
        self.bounded.join().get(x, y)
    }

    #[inline]
    fn m(&self, x: Elem, y: Elem) -> Elem {
        self.bounded.meet().get(x, y)
    }

    #[inline]
    fn c(&self, x: Elem) -> Elem {
        self.complement.get(x)
    }

    /// Sasaki projection `(x ∨ y') ∧ y`.
    pub fn sasaki_product(&self, x: Elem, y: Elem) -> Elem {
        self.m(self.j(x, self.c(y)), y)
    }

    /// Dual Sasaki operation `(x ∧ y') ∨ y`.
    pub fn sasaki_sum(&self, x: Elem, y: Elem) -> Elem {
        self.j(self.m(x, self.c(y)), y)
    }

    pub fn sasaki_product_table(&self) -> BinaryOp {
        BinaryOp::from_fn(self.size(), |x, y| self.sasaki_product(x, y))
    }

    pub fn sasaki_sum_table(&self) -> BinaryOp {
        BinaryOp::from_fn(self.size(), |x, y| self.sasaki_sum(x, y))
    }

    /// `a C b` iff `a = (a ∧ b) ∨ (a ∧ b')`.
    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        a == self.j(self.m(a, b), self.m(a, self.c(b)))
    }

    pub fn with_carrier(self, carrier: Carrier) -> Result<Self> {
        Ok(OrthoLattice {
            bounded: self.bounded.with_carrier(carrier)?,
            complement: self.complement,
        })
    }

    pub fn relabeled(&self, perm: &[Elem]) -> Self {
        OrthoLattice {
            bounded: self.bounded.relabeled(perm),
            complement: self.complement.relabeled(perm),
        }
    }

    pub fn to_algebra(&self, name: &str) -> Algebra {
        Algebra::from_parts(
            name,
            self.carrier().clone(),
            vec![
                ("join".into(), Operation::Binary(self.join().clone())),
                ("meet".into(), Operation::Binary(self.meet().clone())),
                ("comp".into(), Operation::Unary(self.complement.clone())),
            ],
            vec![("bottom".into(), self.bottom()), ("top".into(), self.top())],
        )
        .expect("tables validated on construction")
    }

    pub fn from_algebra(a: &Algebra) -> Result<Self> {
        OrthoLattice::new(BoundedLattice::from_algebra(a)?, a.unary("comp")?.clone())
    }
}

fn structural_prerequisites(s: &OrthoLattice) -> CheckReport {
    let mut r = is_bounded_lattice(&s.bounded);
    r.extend(is_antitone_involution(&s.bounded, &s.complement));
    r
}

fn complement_laws(r: &mut CheckReport, s: &OrthoLattice) {
    r.check("complement-join", |[x]| s.j(x, s.c(x)) == s.top());
    r.check("complement-meet", |[x]| s.m(x, s.c(x)) == s.bottom());
}

/// Every ortholattice axiom: bounded lattice, antitone involution, and
/// `x ∨ x' = 1`, `x ∧ x' = 0`.
pub fn check_ortholattice(s: &OrthoLattice) -> CheckReport {
    let mut r = structural_prerequisites(s);
    complement_laws(&mut r, s);
    r
}

/// Checks the orthomodular law `x <= y ⇒ y = x ∨ (y ∧ x')` together with the
/// complement identities as separate entries.
///
/// Fails with [`Error::PrerequisiteFailed`] if `s` is not a bounded lattice
/// with an antitone involution.
pub fn check_orthomodular(s: &OrthoLattice) -> Result<CheckReport> {
    let pre = structural_prerequisites(s);
    if !pre.passed() {
        return Err(Error::PrerequisiteFailed(Box::new(pre)));
    }
    let mut r = CheckReport::new(s.carrier());
    complement_laws(&mut r, s);
    r.check("orthomodular-law", |[x, y]| {
        !s.leq(x, y) || y == s.j(x, s.m(y, s.c(x)))
    });
    Ok(r)
}

pub fn is_orthomodular(s: &OrthoLattice) -> bool {
    check_orthomodular(s).is_ok_and(|r| r.passed())
}

fn require_orthomodular(s: &OrthoLattice) -> Result<()> {
    let r = check_orthomodular(s)?;
    if r.passed() {
        Ok(())
    } else {
        Err(Error::PrerequisiteFailed(Box::new(r)))
    }
}

/// Symmetry of `C`, `x <= y ⇒ x C y`, and `a C b ⇒ a C b'`.
pub fn check_commutation_lemma(s: &OrthoLattice) -> Result<CheckReport> {
    require_orthomodular(s)?;
    let mut r = CheckReport::new(s.carrier());
    r.check("commutation-symmetric", |[a, b]| {
        !s.commutes(a, b) || s.commutes(b, a)
    });
    r.check("order-implies-commutation", |[a, b]| {
        !s.leq(a, b) || s.commutes(a, b)
    });
    r.check("commutation-complement", |[a, b]| {
        !s.commutes(a, b) || s.commutes(a, s.c(b))
    });
    Ok(r)
}

/// Some element of the triple commutes with both others.
pub fn foulis_holland_hypothesis(s: &OrthoLattice, a: Elem, b: Elem, c: Elem) -> bool {
    (s.commutes(a, c) && s.commutes(b, c))
        || (s.commutes(a, b) && s.commutes(c, b))
        || (s.commutes(b, a) && s.commutes(c, a))
}

/// Both distributive identities on every triple meeting the commutation hypothesis.
pub fn check_foulis_holland(s: &OrthoLattice) -> Result<CheckReport> {
    require_orthomodular(s)?;
    let mut commute = vec![false; s.size() * s.size()];
    for a in 0..s.size() {
        for b in 0..s.size() {
            commute[a * s.size() + b] = s.commutes(a, b);
        }
    }
    let n = s.size();
    let cm = |x: Elem, y: Elem| commute[x * n + y];
    let hyp = |a, b, c| (cm(a, c) && cm(b, c)) || (cm(a, b) && cm(c, b)) || (cm(b, a) && cm(c, a));
    let mut r = CheckReport::new(s.carrier());
    r.check("distributive-meet-over-join", |[a, b, c]| {
        !hyp(a, b, c) || s.m(s.j(a, b), c) == s.j(s.m(a, c), s.m(b, c))
    });
    r.check("distributive-join-over-meet", |[a, b, c]| {
        !hyp(a, b, c) || s.j(s.m(a, b), c) == s.m(s.j(a, c), s.j(b, c))
    });
    Ok(r)
}
