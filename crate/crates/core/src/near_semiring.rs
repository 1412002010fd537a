//! Right near semirings, their classification, and the semilattice- and
//! lattice-ordered variants.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::report::CheckReport;
use crate::table::{Algebra, BinaryOp, Carrier, Elem, Operation, UnaryOp};

/// `(R, +, ·, 0, 1)` given by tables. Axioms are checked, never assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NearSemiring {
    carrier: Carrier,
    plus: BinaryOp,
    times: BinaryOp,
    zero: Elem,
    one: Elem,
}

impl NearSemiring {
    pub fn new(
        carrier: Carrier,
        plus: BinaryOp,
        times: BinaryOp,
        zero: Elem,
        one: Elem,
    ) -> Result<Self> {
        let n = carrier.size();
        for size in [plus.size(), times.size()] {
            if size != n {
                return Err(Error::CarrierMismatch {
                    left: n,
                    right: size,
                });
            }
        }
        for c in [zero, one] {
            if c >= n {
                return Err(Error::OutOfRange {
                    op: "constant".into(),
                    value: c,
                    size: n,
                });
            }
        }
        Ok(NearSemiring {
            carrier,
            plus,
            times,
            zero,
            one,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn plus(&self) -> &BinaryOp {
        &self.plus
    }

    pub fn times(&self) -> &BinaryOp {
        &self.times
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    /// The structure carried over by the bijection `alpha`:
    /// `x +' y = alpha(alpha⁻¹x + alpha⁻¹y)` and likewise for `·` and the constants.
    ///
    /// Panics if `alpha` is not a bijection.
    pub fn transported(&self, alpha: &UnaryOp) -> Self {
        let n = self.size();
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            inv[alpha.get(x)] = x;
        }
        assert!(inv.iter().all(|&v| v < n), "transport needs a bijection");
        let tr = |op: &BinaryOp| BinaryOp::from_fn(n, |x, y| alpha.get(op.get(inv[x], inv[y])));
        NearSemiring {
            carrier: self.carrier.clone(),
            plus: tr(&self.plus),
            times: tr(&self.times),
            zero: alpha.get(self.zero),
            one: alpha.get(self.one),
        }
    }

    pub fn to_algebra(&self, name: &str) -> Algebra {
        Algebra::from_parts(
            name,
            self.carrier.clone(),
            vec![
                ("plus".into(), Operation::Binary(self.plus.clone())),
                ("times".into(), Operation::Binary(self.times.clone())),
            ],
            vec![("zero".into(), self.zero), ("one".into(), self.one)],
        )
        .expect("tables validated on construction")
    }

    pub fn from_algebra(a: &Algebra) -> Result<Self> {
        NearSemiring::new(
            a.carrier().clone(),
            a.binary("plus")?.clone(),
            a.binary("times")?.clone(),
            a.constant("zero")?,
            a.constant("one")?,
        )
    }
}

/// Commutative monoid `(R, +, 0)`, two-sided neutral `1` for `·`, right
/// distributivity and two-sided annihilation by `0`.
pub fn check_right_near_semiring(s: &NearSemiring) -> CheckReport {
    let (p, t) = (&s.plus, &s.times);
    let (zero, one) = (s.zero, s.one);
    let mut r = CheckReport::new(&s.carrier);
    r.check("plus-commutative", |[x, y]| p.get(x, y) == p.get(y, x));
    r.check("plus-associative", |[x, y, z]| {
        p.get(p.get(x, y), z) == p.get(x, p.get(y, z))
    });
    r.check("plus-neutral", |[x]| p.get(x, zero) == x);
    r.check("times-neutral", |[x]| t.get(x, one) == x && t.get(one, x) == x);
    r.check("right-distributive", |[x, y, z]| {
        t.get(p.get(x, y), z) == p.get(t.get(x, z), t.get(y, z))
    });
    r.check("zero-annihilates", |[x]| t.get(x, zero) == zero && t.get(zero, x) == zero);
    r
}

/// The optional properties of a right near semiring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub associative: bool,
    pub left_distributive: bool,
    pub right_distributive: bool,
    pub commutative: bool,
}

impl Classification {
    /// `·` associative and distributive on both sides.
    pub fn is_semiring(&self) -> bool {
        self.associative && self.is_near_semiring()
    }

    pub fn is_near_semiring(&self) -> bool {
        self.left_distributive && self.right_distributive
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }
}

fn property_report(s: &NearSemiring) -> CheckReport {
    let (p, t) = (&s.plus, &s.times);
    let mut r = CheckReport::new(&s.carrier);
    r.check("times-associative", |[x, y, z]| {
        t.get(t.get(x, y), z) == t.get(x, t.get(y, z))
    });
    r.check("left-distributive", |[x, y, z]| {
        t.get(x, p.get(y, z)) == p.get(t.get(x, y), t.get(x, z))
    });
    r.check("right-distributive", |[x, y, z]| {
        t.get(p.get(x, y), z) == p.get(t.get(x, z), t.get(y, z))
    });
    r.check("times-commutative", |[x, y]| t.get(x, y) == t.get(y, x));
    r
}

/// Semiring, near semiring and commutativity flags of a right near semiring.
pub fn classify(s: &NearSemiring) -> Result<Classification> {
    let pre = check_right_near_semiring(s);
    if !pre.passed() {
        return Err(Error::PrerequisiteFailed(Box::new(pre)));
    }
    let r = property_report(s);
    let flag = |id| r.get(id).is_some_and(|a| a.passed());
    Ok(Classification {
        associative: flag("times-associative"),
        left_distributive: flag("left-distributive"),
        right_distributive: flag("right-distributive"),
        commutative: flag("times-commutative"),
    })
}

/// Right near semiring axioms plus associativity and left distributivity of `·`.
pub fn check_semiring(s: &NearSemiring) -> CheckReport {
    let mut r = check_right_near_semiring(s);
    let extra = property_report(s);
    for id in ["times-associative", "left-distributive"] {
        r.push(extra.get(id).cloned().expect("computed above"));
    }
    r
}

fn require_same_size(s: &NearSemiring, l: &Lattice) -> Result<()> {
    if s.size() != l.size() {
        return Err(Error::CarrierMismatch {
            left: s.size(),
            right: l.size(),
        });
    }
    Ok(())
}

/// `x + y = x ∨ y` and `xy <= y` in the order of `lattice`.
pub fn check_join_ordered(s: &NearSemiring, lattice: &Lattice) -> Result<CheckReport> {
    require_same_size(s, lattice)?;
    let (p, t) = (&s.plus, &s.times);
    let mut r = CheckReport::new(&s.carrier);
    r.check("plus-is-join", |[x, y]| p.get(x, y) == lattice.join().get(x, y));
    r.check("product-below-right", |[x, y]| lattice.leq(t.get(x, y), y));
    Ok(r)
}

/// `x + y = x ∧ y` and `xy >= y` in the order of `lattice`.
pub fn check_meet_ordered(s: &NearSemiring, lattice: &Lattice) -> Result<CheckReport> {
    require_same_size(s, lattice)?;
    let (p, t) = (&s.plus, &s.times);
    let mut r = CheckReport::new(&s.carrier);
    r.check("plus-is-meet", |[x, y]| p.get(x, y) == lattice.meet().get(x, y));
    r.check("product-above-right", |[x, y]| lattice.leq(y, t.get(x, y)));
    Ok(r)
}

/// Lattice-ordered (`+ = ∨`, `xy <= x ∧ y`) or, with `dual`, dually
/// lattice-ordered (`+ = ∧`, `xy >= x ∨ y`) semiring.
pub fn check_lattice_ordered_semiring(
    s: &NearSemiring,
    lattice: &Lattice,
    dual: bool,
) -> Result<CheckReport> {
    require_same_size(s, lattice)?;
    let semiring = check_semiring(s);
    if !semiring.passed() {
        return Err(Error::PrerequisiteFailed(Box::new(semiring)));
    }
    let (p, t) = (&s.plus, &s.times);
    let (j, m) = (lattice.join(), lattice.meet());
    let mut r = CheckReport::new(&s.carrier);
    if dual {
        r.check("plus-is-meet", |[x, y]| p.get(x, y) == m.get(x, y));
        r.check("product-above-join", |[x, y]| lattice.leq(j.get(x, y), t.get(x, y)));
    } else {
        r.check("plus-is-join", |[x, y]| p.get(x, y) == j.get(x, y));
        r.check("product-below-meet", |[x, y]| lattice.leq(t.get(x, y), m.get(x, y)));
    }
    Ok(r)
}

/// `alpha` is an involution carrying `+`, `·`, `0`, `1` of `s1` onto those of `s2`.
pub fn is_involutive_isomorphism(
    s1: &NearSemiring,
    s2: &NearSemiring,
    alpha: &UnaryOp,
) -> Result<CheckReport> {
    for size in [s2.size(), alpha.size()] {
        if size != s1.size() {
            return Err(Error::CarrierMismatch {
                left: s1.size(),
                right: size,
            });
        }
    }
    let a = |x| alpha.get(x);
    let mut r = CheckReport::new(&s1.carrier);
    r.check("involution", |[x]| a(a(x)) == x);
    r.check("plus-preserved", |[x, y]| {
        a(s1.plus.get(x, y)) == s2.plus.get(a(x), a(y))
    });
    r.check("times-preserved", |[x, y]| {
        a(s1.times.get(x, y)) == s2.times.get(a(x), a(y))
    });
    // witness is the constant itself
    r.check("zero-preserved", |[x]| x != s1.zero || a(x) == s2.zero);
    r.check("one-preserved", |[x]| x != s1.one || a(x) == s2.one);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn boolean_semiring() -> NearSemiring {
        let c = Carrier::new(["0", "1"]).unwrap();
        NearSemiring::new(
            c,
            BinaryOp::from_fn(2, |x, y| x.max(y)),
            BinaryOp::from_fn(2, |x, y| x.min(y)),
            0,
            1,
        )
        .unwrap()
    }

    fn lattice_as_semiring(name: &str) -> NearSemiring {
        let s = corpus::by_name(name).unwrap();
        NearSemiring::new(
            s.carrier().clone(),
            s.join().clone(),
            s.meet().clone(),
            s.bottom(),
            s.top(),
        )
        .unwrap()
    }

    #[test]
    fn boolean_semiring_classifies_fully() {
        let s = boolean_semiring();
        assert!(check_right_near_semiring(&s).passed());
        let c = classify(&s).unwrap();
        assert!(c.is_semiring() && c.is_near_semiring() && c.is_commutative());
    }

    #[test]
    fn mo2_join_meet_is_not_right_distributive() {
        // brute-force oracle: first lexicographic (x, y, z) with (x∨y)∧z ≠ (x∧z)∨(y∧z)
        let mo2 = corpus::mo2();
        let n = mo2.size();
        let (j, m) = (mo2.join(), mo2.meet());
        let mut oracle = None;
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m.get(j.get(x, y), z) != j.get(m.get(x, z), m.get(y, z)) {
                        oracle = Some(vec![x, y, z]);
                        break 'outer;
                    }
                }
            }
        }
        let r = check_right_near_semiring(&lattice_as_semiring("mo2"));
        let failing: Vec<&str> = r.failures().map(|a| a.id.as_str()).collect();
        assert_eq!(failing, vec!["right-distributive"]);
        assert_eq!(r.get("right-distributive").unwrap().witness, oracle);
        assert_eq!(r.witness_names("right-distributive"), Some(vec!["a", "a'", "b"]));
        assert!(matches!(
            classify(&lattice_as_semiring("mo2")),
            Err(Error::PrerequisiteFailed(_))
        ));
    }

    #[test]
    fn constant_product_is_not_join_ordered() {
        let b4 = corpus::b4();
        let times = BinaryOp::from_fn(4, |x, y| if x == 0 || y == 0 { 0 } else { 3 });
        let s = NearSemiring::new(b4.carrier().clone(), b4.join().clone(), times, 0, 3).unwrap();
        let r = check_join_ordered(&s, b4.bounded().lattice()).unwrap();
        assert!(r.get("plus-is-join").unwrap().passed());
        assert_eq!(r.witness_names("product-below-right"), Some(vec!["a", "a"]));
    }

    #[test]
    fn two_chain_sasaki_is_join_ordered() {
        let c2 = corpus::c2();
        let s = NearSemiring::new(
            c2.carrier().clone(),
            c2.join().clone(),
            c2.sasaki_product_table(),
            0,
            1,
        )
        .unwrap();
        assert!(check_join_ordered(&s, c2.bounded().lattice()).unwrap().passed());
    }

    #[test]
    fn carrier_mismatch() {
        let s = boolean_semiring();
        let b4 = corpus::b4();
        assert!(matches!(
            check_join_ordered(&s, b4.bounded().lattice()),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn meet_ordered_rejects_join_as_plus() {
        let b8 = corpus::b8();
        let s = NearSemiring::new(
            b8.carrier().clone(),
            b8.join().clone(),
            b8.sasaki_sum_table(),
            b8.top(),
            b8.bottom(),
        )
        .unwrap();
        let r = check_meet_ordered(&s, b8.bounded().lattice()).unwrap();
        assert!(!r.get("plus-is-meet").unwrap().passed());
        assert!(r.get("product-above-right").unwrap().passed());
    }

    #[test]
    fn lattice_ordered_needs_a_semiring() {
        let s = lattice_as_semiring("mo2");
        let mo2 = corpus::mo2();
        assert!(matches!(
            check_lattice_ordered_semiring(&s, mo2.bounded().lattice(), false),
            Err(Error::PrerequisiteFailed(_))
        ));
        let b = boolean_semiring();
        let c2 = corpus::c2();
        let r = check_lattice_ordered_semiring(&b, c2.bounded().lattice(), false).unwrap();
        assert!(r.passed());
    }
}
