//! Coupled right orthosemirings and their correspondence with orthomodular
//! lattices.
//!
//! `construct_n` turns an orthomodular lattice into the triple
//! `((L, ∨, ⊙, 0, 1), (L, ∧, ⊕, 1, 0), ')` built from the Sasaki operations;
//! `construct_l` reads the lattice back off a triple. Both round trips are
//! identities at the level of raw tables.

use crate::error::{Error, Result};
use crate::lattice::{is_lattice, BoundedLattice, Lattice};
use crate::near_semiring::{
    check_join_ordered, check_lattice_ordered_semiring, check_meet_ordered,
    check_right_near_semiring, check_semiring, is_involutive_isomorphism, NearSemiring,
};
use crate::ortho::{check_orthomodular, OrthoLattice};
use crate::report::{AxiomResult, CheckReport};
use crate::table::{Algebra, BinaryOp, Carrier, Elem, Operation, UnaryOp};

/// `((R, ∨, ·, 0, 1), (R, ∧, ∗, 1, 0), α)` over one carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoupledTriple {
    first: NearSemiring,
    second: NearSemiring,
    alpha: UnaryOp,
}

impl CoupledTriple {
    pub fn new(first: NearSemiring, second: NearSemiring, alpha: UnaryOp) -> Result<Self> {
        if first.carrier() != second.carrier() {
            return Err(Error::CarrierMismatch {
                left: first.size(),
                right: second.size(),
            });
        }
        if alpha.size() != first.size() {
            return Err(Error::CarrierMismatch {
                left: first.size(),
                right: alpha.size(),
            });
        }
        Ok(CoupledTriple {
            first,
            second,
            alpha,
        })
    }

    pub fn first(&self) -> &NearSemiring {
        &self.first
    }

    pub fn second(&self) -> &NearSemiring {
        &self.second
    }

    pub fn alpha(&self) -> &UnaryOp {
        &self.alpha
    }

    pub fn carrier(&self) -> &Carrier {
        self.first.carrier()
    }

    pub fn size(&self) -> usize {
        self.first.size()
    }

    /// `(first.plus, second.plus)` read as `(∨, ∧)`.
    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.first.plus().clone(), self.second.plus().clone())
            .expect("components share the carrier")
    }

    pub fn to_algebra(&self, name: &str) -> Algebra {
        let bin = |b: &BinaryOp| Operation::Binary(b.clone());
        Algebra::from_parts(
            name,
            self.carrier().clone(),
            vec![
                ("join".into(), bin(self.first.plus())),
                ("times".into(), bin(self.first.times())),
                ("meet".into(), bin(self.second.plus())),
                ("star".into(), bin(self.second.times())),
                ("alpha".into(), Operation::Unary(self.alpha.clone())),
            ],
            vec![
                ("zero".into(), self.first.zero()),
                ("one".into(), self.first.one()),
                ("zero2".into(), self.second.zero()),
                ("one2".into(), self.second.one()),
            ],
        )
        .expect("tables validated on construction")
    }

    pub fn from_algebra(a: &Algebra) -> Result<Self> {
        let c = a.carrier().clone();
        let first = NearSemiring::new(
            c.clone(),
            a.binary("join")?.clone(),
            a.binary("times")?.clone(),
            a.constant("zero")?,
            a.constant("one")?,
        )?;
        let second = NearSemiring::new(
            c,
            a.binary("meet")?.clone(),
            a.binary("star")?.clone(),
            a.constant("zero2")?,
            a.constant("one2")?,
        )?;
        CoupledTriple::new(first, second, a.unary("alpha")?.clone())
    }
}

/// The six axioms R1–R6, one report entry each.
///
/// * R1: `(first.plus, second.plus)` is a lattice.
/// * R2: the first component is a ∨-semilattice ordered right near semiring.
/// * R3: the second component is a ∧-semilattice ordered right near semiring.
/// * R4: `alpha` is an involutive isomorphism from the first onto the second.
/// * R5: `(x ∧ α(y)) ∨ y = x ∗ y`.
/// * R6: `y ∗ (x ∧ y) = y`.
pub fn check_coupled_right_orthosemiring(t: &CoupledTriple) -> Result<CheckReport> {
    Ok(coupled_sub_reports(t)?.summary(t))
}

/// The component reports behind each of R1–R6, with their clause-level entries.
pub struct CoupledBreakdown {
    pub r1: CheckReport,
    pub r2: CheckReport,
    pub r3: CheckReport,
    pub r4: CheckReport,
    pub r5: CheckReport,
    pub r6: CheckReport,
}

impl CoupledBreakdown {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &CheckReport)> {
        [
            ("R1", &self.r1),
            ("R2", &self.r2),
            ("R3", &self.r3),
            ("R4", &self.r4),
            ("R5", &self.r5),
            ("R6", &self.r6),
        ]
        .into_iter()
    }

    fn summary(&self, t: &CoupledTriple) -> CheckReport {
        let mut r = CheckReport::new(t.carrier());
        for (id, sub) in self.iter() {
            r.record_composite(id, sub);
        }
        r
    }
}

pub fn coupled_sub_reports(t: &CoupledTriple) -> Result<CoupledBreakdown> {
    let lattice = t.lattice();
    let r1 = is_lattice(t.carrier(), &lattice);

    let mut r2 = check_right_near_semiring(&t.first);
    r2.extend(check_join_ordered(&t.first, &lattice)?);

    let mut r3 = check_right_near_semiring(&t.second);
    r3.extend(check_meet_ordered(&t.second, &lattice)?);

    let r4 = is_involutive_isomorphism(&t.first, &t.second, &t.alpha)?;

    let (j, m, star, a) = (t.first.plus(), t.second.plus(), t.second.times(), &t.alpha);
    let mut r5 = CheckReport::new(t.carrier());
    r5.check("R5", |[x, y]| j.get(m.get(x, a.get(y)), y) == star.get(x, y));
    let mut r6 = CheckReport::new(t.carrier());
    r6.check("R6", |[x, y]| star.get(y, m.get(x, y)) == y);

    Ok(CoupledBreakdown {
        r1,
        r2,
        r3,
        r4,
        r5,
        r6,
    })
}

/// Sasaki triple of an ortholattice, without checking orthomodularity.
/// Used for negative controls.
pub fn sasaki_triple(l: &OrthoLattice) -> CoupledTriple {
    let c = l.carrier().clone();
    let first = NearSemiring::new(
        c.clone(),
        l.join().clone(),
        l.sasaki_product_table(),
        l.bottom(),
        l.top(),
    )
    .expect("tables share the carrier");
    let second = NearSemiring::new(c, l.meet().clone(), l.sasaki_sum_table(), l.top(), l.bottom())
        .expect("tables share the carrier");
    CoupledTriple::new(first, second, l.complement().clone()).expect("tables share the carrier")
}

/// `N(L)`: requires `l` to be orthomodular.
pub fn construct_n(l: &OrthoLattice) -> Result<CoupledTriple> {
    let r = check_orthomodular(l)?;
    if !r.passed() {
        return Err(Error::NotOrthomodular(Box::new(r)));
    }
    Ok(sasaki_triple(l))
}

/// `L(N)`: requires `t` to satisfy R1–R6.
pub fn construct_l(t: &CoupledTriple) -> Result<OrthoLattice> {
    let r = check_coupled_right_orthosemiring(t)?;
    if let Some(failed) = r.first_failure() {
        return Err(Error::NotCoupled {
            axiom: failed.id.clone(),
            report: Box::new(r),
        });
    }
    let bounded = BoundedLattice::new(
        t.carrier().clone(),
        t.first.plus().clone(),
        t.second.plus().clone(),
        t.first.zero(),
        t.second.zero(),
    )?;
    OrthoLattice::new(bounded, t.alpha.clone())
}

fn table_equality(r: &mut CheckReport, id: &str, left: &BinaryOp, right: &BinaryOp) {
    r.check(id, |[x, y]| left.get(x, y) == right.get(x, y));
}

fn unary_equality(r: &mut CheckReport, id: &str, left: &UnaryOp, right: &UnaryOp) {
    r.check(id, |[x]| left.get(x) == right.get(x));
}

fn constant_equality(r: &mut CheckReport, id: &str, left: Elem, right: Elem) {
    r.push(AxiomResult {
        id: id.to_owned(),
        witness: (left != right).then(|| vec![left, right]),
        detail: None,
    });
}

/// Table-level comparison of `l` with `L(N(l))`.
pub fn verify_roundtrip_l(l: &OrthoLattice) -> Result<CheckReport> {
    let back = construct_l(&construct_n(l)?)?;
    let mut r = CheckReport::new(l.carrier());
    table_equality(&mut r, "join-equal", l.join(), back.join());
    table_equality(&mut r, "meet-equal", l.meet(), back.meet());
    unary_equality(&mut r, "complement-equal", l.complement(), back.complement());
    constant_equality(&mut r, "bottom-equal", l.bottom(), back.bottom());
    constant_equality(&mut r, "top-equal", l.top(), back.top());
    Ok(r)
}

/// Table-level comparison of `t` with `N(L(t))`.
pub fn verify_roundtrip_n(t: &CoupledTriple) -> Result<CheckReport> {
    let back = construct_n(&construct_l(t)?)?;
    let mut r = CheckReport::new(t.carrier());
    table_equality(&mut r, "join-equal", t.first.plus(), back.first.plus());
    table_equality(&mut r, "times-equal", t.first.times(), back.first.times());
    table_equality(&mut r, "meet-equal", t.second.plus(), back.second.plus());
    table_equality(&mut r, "star-equal", t.second.times(), back.second.times());
    unary_equality(&mut r, "alpha-equal", &t.alpha, &back.alpha);
    constant_equality(&mut r, "zero-equal", t.first.zero(), back.first.zero());
    constant_equality(&mut r, "one-equal", t.first.one(), back.first.one());
    constant_equality(&mut r, "zero2-equal", t.second.zero(), back.second.zero());
    constant_equality(&mut r, "one2-equal", t.second.one(), back.second.one());
    Ok(r)
}

/// The MV-style coupled semiring: a lattice-ordered semiring, a dually
/// lattice-ordered semiring, an involutive isomorphism between them, and
/// the coupling law `x + α(x)·y = x ∨ y`, where `+` is the multiplication of
/// the second component.
pub fn check_coupled_semiring(t: &CoupledTriple) -> Result<CheckReport> {
    let lattice = t.lattice();
    let mut r = CheckReport::new(t.carrier());

    let first_semiring = check_semiring(&t.first);
    r.record_composite("first-semiring", &first_semiring);
    match check_lattice_ordered_semiring(&t.first, &lattice, false) {
        Ok(sub) => r.record_composite("first-lattice-ordered", &sub),
        Err(Error::PrerequisiteFailed(sub)) => r.record_composite("first-lattice-ordered", &sub),
        Err(e) => return Err(e),
    }

    let second_semiring = check_semiring(&t.second);
    r.record_composite("second-semiring", &second_semiring);
    match check_lattice_ordered_semiring(&t.second, &lattice, true) {
        Ok(sub) => r.record_composite("second-dually-lattice-ordered", &sub),
        Err(Error::PrerequisiteFailed(sub)) => {
            r.record_composite("second-dually-lattice-ordered", &sub)
        }
        Err(e) => return Err(e),
    }

    let iso = is_involutive_isomorphism(&t.first, &t.second, &t.alpha)?;
    r.record_composite("involutive-isomorphism", &iso);

    let (j, dot, oplus, a) = (t.first.plus(), t.first.times(), t.second.times(), &t.alpha);
    r.check("coupling-law", |[x, y]| {
        oplus.get(x, dot.get(a.get(x), y)) == j.get(x, y)
    });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn n_of_mo2_is_coupled() {
        let t = construct_n(&corpus::mo2()).unwrap();
        let r = check_coupled_right_orthosemiring(&t).unwrap();
        assert!(r.passed(), "{r}");
        let ids: Vec<&str> = r.results().iter().map(|a| a.id.as_str()).collect();
        assert_eq!(ids, ["R1", "R2", "R3", "R4", "R5", "R6"]);
        let mo2 = corpus::mo2();
        let (a, b) = (1, 3);
        assert_eq!(t.first().times().get(a, b), b);
        assert_eq!(mo2.carrier().name(b), "b");
    }

    #[test]
    fn identity_alpha_breaks_r4() {
        let t = construct_n(&corpus::b4()).unwrap();
        let bad = CoupledTriple::new(t.first().clone(), t.second().clone(), UnaryOp::identity(4))
            .unwrap();
        let r = check_coupled_right_orthosemiring(&bad).unwrap();
        assert!(!r.get("R4").unwrap().passed());
        let r4 = is_involutive_isomorphism(bad.first(), bad.second(), bad.alpha()).unwrap();
        assert_eq!(r4.get("zero-preserved").unwrap().witness, Some(vec![0]));
    }

    #[test]
    fn benzene_triple_fails_r6() {
        let t = sasaki_triple(&corpus::o6());
        let r = check_coupled_right_orthosemiring(&t).unwrap();
        assert!(!r.get("R6").unwrap().passed());
        assert!(matches!(
            construct_l(&t),
            Err(Error::NotCoupled { .. })
        ));
        assert!(matches!(
            construct_n(&corpus::o6()),
            Err(Error::NotOrthomodular(_))
        ));
    }

    #[test]
    fn chain_triple_is_boolean() {
        let c2 = corpus::c2();
        let t = construct_n(&c2).unwrap();
        assert_eq!(t.first().times(), c2.meet());
        assert_eq!(t.second().times(), c2.join());
        assert_eq!(construct_l(&t).unwrap(), c2);
    }

    #[test]
    fn round_trips_on_corpus() {
        for (name, l) in corpus::orthomodular() {
            assert!(verify_roundtrip_l(&l).unwrap().passed(), "{name}");
            let t = construct_n(&l).unwrap();
            assert!(verify_roundtrip_n(&t).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn algebra_round_trip() {
        let t = construct_n(&corpus::mo2()).unwrap();
        let back = CoupledTriple::from_algebra(&t.to_algebra("n-mo2")).unwrap();
        assert_eq!(back, t);
    }
}
